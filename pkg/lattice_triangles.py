#!/usr/bin/env python3
"""Lattice triangle classifier entry point. See trilab/ package for implementation."""
import sys

from trilab.app import main

if __name__ == '__main__':  # pragma: no cover
    sys.exit(main())
