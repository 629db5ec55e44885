"""Module entry point so ``python -m dephaser`` behaves like the console script."""

from .cli import main

if __name__ == "__main__":
    raise SystemExit(main())
