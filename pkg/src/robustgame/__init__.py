"""Graph robustness toolkit: generators, targeted attacks, repair and the
Mallory/Alice attack-repair game."""

__version__ = "0.1.0"
