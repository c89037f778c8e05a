from __future__ import annotations

from asp_module_algebra.cli import main

if __name__ == "__main__":
    raise SystemExit(main())
