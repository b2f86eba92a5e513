"""Entrypoint that runs the dynmaps CLI from a source checkout, no install needed."""
import sys

from dynmaps.main import main

if __name__ == "__main__":
    sys.exit(main())
