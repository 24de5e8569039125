#!/usr/bin/env python
"""
Check that all the public functions and classes defined in the unrolling
modules are effectively used, either by another module or by the tests.
"""
import os
import re
import sys

IGNORED = ["main", "run", "parser", "verify_all"]
ERROR = False
ROOT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..")


def error(message):
    print(message)
    global ERROR
    ERROR = True


def sources(directory):
    files = {}
    for (dirpath, _, paths) in os.walk(os.path.join(ROOT, directory)):
        for path in paths:
            if path.endswith(".py"):
                with open(os.path.join(dirpath, path)) as fd:
                    files[os.path.join(dirpath, path)] = fd.read()
    return files


def definitions(files):
    defined = []
    for path, content in files.items():
        names = re.findall(r"^(?:def|class) ([A-Za-z][A-Za-z0-9_]*)", content, re.M)
        for name in names:
            defined.append((path, name))
    return defined


def check_definitions(defined, files):
    for path, name in defined:
        if name in IGNORED or name.startswith("cmd_") or name.startswith("check_"):
            continue
        pattern = re.compile(r"\b" + name + r"\b")
        used = False
        for other, content in files.items():
            count = len(pattern.findall(content))
            if other != path and count > 0 or other == path and count > 1:
                used = True
                break
        if not used:
            error("Unused: " + name + " in " + os.path.relpath(path, ROOT))


if __name__ == "__main__":
    package = sources(os.path.join("src", "unrolling"))
    tests = sources("tests")
    check_definitions(definitions(package), {**package, **tests})

    if ERROR:
        sys.exit(1)
