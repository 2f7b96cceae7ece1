"""Exact verification toolkit for prime-order plane Cremona maps and Del Pezzo automorphisms."""

__version__ = "0.1.0"
