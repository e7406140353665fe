"""Generators, file formats, the corpus harness and the command line."""
