#!/usr/bin/env python3
"""Convert a ramp collection into the rampforge corpus line format.

Input is JSON or CSV. JSON: a list of objects, or an object mapping ids to
objects, each with a color list and optional source / kind. CSV: a header row
naming at least an id column and a colors column. Colors may be separated by
spaces, semicolons, pipes or commas (CSV colors need quoting for commas).

Field names are matched loosely: id|name, source|origin|collection,
kind|type|class, colors|colours|hex|palette.
"""
import argparse
import csv
import json
import pathlib
import re
import sys

SOURCES = {"colorbrewer", "r", "tableau", "colourlovers", "other"}
KINDS = {"sequential", "diverging"}
ALIASES = {
    "id": ("id", "name"),
    "source": ("source", "origin", "collection"),
    "kind": ("kind", "type", "class"),
    "colors": ("colors", "colours", "hex", "palette"),
}
HEX = re.compile(r"#?([0-9a-fA-F]{6})\b")


def field(record, key):
    lowered = {k.lower(): v for k, v in record.items()}
    for alias in ALIASES[key]:
        if alias in lowered and lowered[alias] not in (None, ""):
            return lowered[alias]
    return None


def colors_of(value):
    if isinstance(value, list):
        value = " ".join(str(v) for v in value)
    return ["#" + m.upper() for m in HEX.findall(str(value))]


def normalize_source(value, default):
    s = (value or default).strip().lower().replace(" ", "")
    if s in ("colourlover", "colorlovers", "colorlover"):
        s = "colourlovers"
    return s if s in SOURCES else "other"


def normalize_kind(value, default):
    k = (value or default).strip().lower()
    if k.startswith("seq"):
        return "sequential"
    if k.startswith("div"):
        return "diverging"
    raise ValueError(f"unknown kind {value!r}")


def load_records(path):
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".json":
        data = json.loads(text)
        if isinstance(data, dict):
            return [dict(v, id=v.get("id", k)) if isinstance(v, dict) else {"id": k, "colors": v}
                    for k, v in data.items()]
        return data
    return list(csv.DictReader(text.splitlines()))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("inputs", nargs="+", type=pathlib.Path)
    ap.add_argument("-o", "--output", type=pathlib.Path, help="corpus file (default: stdout)")
    ap.add_argument("--source", default="other", help="source for records that name none")
    ap.add_argument("--kind", default="sequential", help="kind for records that name none")
    args = ap.parse_args(argv)

    lines, seen = [], set()
    for path in args.inputs:
        for n, rec in enumerate(load_records(path), 1):
            rid = str(field(rec, "id") or f"{path.stem}-{n}").strip().replace(",", "_")
            colors = colors_of(field(rec, "colors") or "")
            if len(colors) < 2:
                print(f"{path}:{n}: skipping '{rid}' with {len(colors)} colors", file=sys.stderr)
                continue
            if rid in seen:
                raise SystemExit(f"{path}:{n}: duplicate id '{rid}'")
            seen.add(rid)
            source = normalize_source(field(rec, "source"), args.source)
            kind = normalize_kind(field(rec, "kind"), args.kind)
            lines.append(f"{rid},{source},{kind},{';'.join(colors)}")

    out = "".join(line + "\n" for line in lines)
    if args.output:
        args.output.write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)


if __name__ == "__main__":
    main()
