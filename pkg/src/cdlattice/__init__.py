"""Chermak-Delgado lattices of finite groups by exhaustive subgroup enumeration."""
