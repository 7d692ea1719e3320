#!/usr/bin/env python3
"""Prepends the project license header to C++ sources that lack it.

Usage: scripts/add_license_headers.py [--check]

With --check nothing is written and the exit status is 1 if any file is
missing the header.
"""

import argparse
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent
DIRS = ("include", "src", "tests", "tools")
SUFFIXES = (".h", ".cc")
MARKER = "Copyright 2026  The wcnslu Authors"

BODY = """\
// Copyright 2026  The wcnslu Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

"""


def sources():
    for d in DIRS:
        for path in sorted((ROOT / d).rglob("*")):
            if path.suffix in SUFFIXES and path.is_file():
                yield path


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--check", action="store_true")
    args = parser.parse_args()

    missing = []
    for path in sources():
        text = path.read_text()
        if any(MARKER in line for line in text.splitlines()[:3]):
            continue
        missing.append(path)
        if not args.check:
            rel = path.relative_to(ROOT).as_posix()
            path.write_text(f"// {rel}\n\n" + BODY + text)
    for path in missing:
        print(("missing: " if args.check else "added: ") + str(path.relative_to(ROOT)))
    return 1 if args.check and missing else 0


if __name__ == "__main__":
    sys.exit(main())
