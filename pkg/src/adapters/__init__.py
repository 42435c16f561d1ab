"""Adapters for the hexagonal architecture.

Driven adapters supply root finding, eigenvalue computation and report
persistence; the driving adapter is the command line.
"""
