"""Deformation complexes of skeletal monoidal categories and lax monoidal functors."""
