#!/usr/bin/env python3
"""Regenerate resources/locales/*/{first,last}_names.txt from the faker package.

Usage: PYTHONPATH=<faker checkout> python3 tools/export_wordlists.py resources/locales
"""
import importlib
import pathlib
import sys

# fr-FR first names ship 215 unique entries; Maëlys pads the list to 216.
EXTRA_FIRST = {"fr_FR": ["Maëlys"]}
LAST_LIMIT = {"pl_PL": 3455}


def unique(seq):
    seen, out = set(), []
    for s in seq:
        s = s.strip()
        if s and s not in seen:
            seen.add(s)
            out.append(s)
    return out


def main(root):
    for loc in ("en_GB", "pl_PL", "fr_FR"):
        p = importlib.import_module("faker.providers.person." + loc).Provider
        first = unique(list(p.first_names) + EXTRA_FIRST.get(loc, []))
        if loc == "pl_PL":
            last = unique(p.unisex_last_names)
        else:
            last = unique(list(p.last_names))
        last = last[: LAST_LIMIT.get(loc, len(last))]
        d = pathlib.Path(root) / loc.replace("_", "-")
        d.mkdir(parents=True, exist_ok=True)
        (d / "first_names.txt").write_text("\n".join(first) + "\n", encoding="utf-8")
        (d / "last_names.txt").write_text("\n".join(last) + "\n", encoding="utf-8")
        print(loc, len(first), len(last))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "resources/locales")
