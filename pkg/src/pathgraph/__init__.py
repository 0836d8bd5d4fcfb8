"""Compressed representations of path graphs given as a clique tree plus paths."""
