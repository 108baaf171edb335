#!/usr/bin/env python3
# run.py — entrypoint for EtaForms (preflight + banner)

import sys
import platform

try:
    from part1_bootstrap import APP_NAME, err_console, missing_dependencies
except ImportError as e:
    print(f"[FATAL] Missing module: {e.name}. Install requirements.txt.", file=sys.stderr)
    sys.exit(1)

VERSION = "v1.0"


def _preflight() -> None:
    missing = missing_dependencies()
    if missing:
        print(f"[FATAL] Missing module: {', '.join(missing)}. Install requirements.txt.", file=sys.stderr)
        sys.exit(1)


def main(argv=None) -> None:
    _preflight()
    if sys.stdout.isatty():
        err_console.print(f"[bold blue]=== {APP_NAME} {VERSION} ===[/] [grey50]Python {platform.python_version()}[/]")

    # imported after the preflight so a missing package reports cleanly
    from part9_cli import run
    sys.exit(run(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
