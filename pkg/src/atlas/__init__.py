"""Ontology-guided corpus annotation, association graphs, and fisheye navigation."""

__version__ = "0.1.0"
