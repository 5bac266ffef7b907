"""Persistence for filtrations connected by simplicial maps, via Z2 annotations."""
