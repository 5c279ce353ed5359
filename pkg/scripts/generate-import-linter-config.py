#!/usr/bin/env python3
"""
Generate the import-linter configuration of birkhoff.

The layers of the `birkhoff-layers` contract are listed from top to bottom. A layer
written `package|%` is replaced with the submodules of `package`, joined with `|`:
they form a single layer whose members must not import each other.
"""

import argparse
import configparser
import importlib
import pkgutil
import sys
from typing import Dict, List, TextIO


NOTICE = (
    "# This file has been generated by ./scripts/generate-import-linter-config.py,"
    " do not edit by hand!"
)

ROOT_PACKAGE = "birkhoff"

LAYERS = [
    "birkhoff.__main__",
    "birkhoff.cmd|%",
    "birkhoff.verticals|%",
    "birkhoff.core",
    "click | birkhoff.utils | numpy | scipy",
]

# cmd modules share the helpers of cmd.utils
IGNORE_IMPORTS = ["birkhoff.cmd.** -> birkhoff.cmd.utils.*"]


def submodules(package: str) -> List[str]:
    module = importlib.import_module(package)
    return sorted(
        info.name
        for info in pkgutil.iter_modules(module.__path__, prefix=f"{package}.")
    )


def expand_layer(layer: str) -> str:
    if not layer.endswith("|%"):
        return layer
    return " | ".join(submodules(layer[:-2]))


def as_lines(values: List[str]) -> str:
    """Multi-line values start on the line after the key"""
    return "\n".join(["", *values])


def build_config() -> Dict[str, Dict[str, str]]:
    return {
        "importlinter": {
            "root_package": ROOT_PACKAGE,
            "include_external_packages": "True",
        },
        "importlinter:contract:birkhoff-layers": {
            "name": "birkhoff-layers",
            "type": "layers",
            "layers": as_lines([expand_layer(layer) for layer in LAYERS]),
            "ignore_imports": as_lines(IGNORE_IMPORTS),
            "unmatched_ignore_imports_alerting": "warn",
        },
    }


def write_config(out: TextIO) -> None:
    config = configparser.ConfigParser()
    config.read_dict(build_config())
    out.write(f"{NOTICE}\n\n")
    config.write(out)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.strip().splitlines()[0])
    parser.add_argument(
        "output",
        nargs="?",
        type=argparse.FileType("w"),
        default=sys.stdout,
        help="Where to write the configuration. Defaults to stdout.",
    )
    args = parser.parse_args()
    write_config(args.output)


if __name__ == "__main__":
    main()
