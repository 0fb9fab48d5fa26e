"""Motivic, topological and Igusa zeta functions from resolution data."""
