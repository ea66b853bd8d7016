"""Nilpotent orbits, limit mixed Hodge structures and norm estimates for Zucker extensions."""
