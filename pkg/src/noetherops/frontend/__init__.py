"""Parsing, file formats and the command line interface."""
