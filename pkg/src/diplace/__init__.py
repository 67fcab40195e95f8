"""Digraph placement games: canonical values, exhaustive and random searches, bounds."""

__version__ = "0.1.0"
