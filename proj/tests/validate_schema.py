#!/usr/bin/env python3
"""Run the CLI over every JSON-producing command and validate against the shipped schema."""
import copy
import json
import pathlib
import subprocess
import sys

import jsonschema

RUNS = [
    ["search", "--n", "12", "--lo", "1", "--hi", "5000"],
    ["search", "--n", "40", "--lo", "1", "--hi", "10"],
    ["scan", "--pred", "A", "--r", "30"],
    ["scan", "--pred", "B", "--r", "30"],
    ["minm", "--count", "14"],
    ["--search-cap", "50", "minm", "--count", "8"],
    ["streak", "--m", "37", "--n", "14", "--doubling"],
    ["streak", "--m", "1", "--n", "3"],
    ["fermat", "--n", "5", "--mod", "641"],
    ["fermat", "--n", "100", "--mod", "18446744073709551557"],
    ["prime", "--p", "3317044064679887385961813"],
    ["check", "zero-gen", "--A", "7", "--B", "-3", "--C", "2", "--D", "10", "--E", "-8"],
    ["check", "second-gen", "--b", "6", "--c", "0", "--d", "1", "--g", "2"],
    ["check", "broda", "--A", "128", "--B", "2", "--C", "4", "--D", "4294967297"],
    ["check", "particularizacion3", "--i", "5", "--n", "5"],
    ["check", "particularizacion", "--k", "7", "--n", "12", "--r", "137", "--s", "14"],
    ["check", "product-version", "--m", "37", "--n", "14"],
    ["graph", "encode", "--rows", "1,11,111"],
    ["graph", "decode", "--terms", "1,3,7"],
    ["graph", "emit", "--family", "transposition", "--count", "6"],
    ["graph", "emit", "--family", "rary_tree", "--r", "2", "--count", "70"],
    ["graph", "components", "--n", "11"],
    ["graph", "components", "--upto", "200"],
    ["graph", "verify", "--family", "divisibility_hasse", "--upto", "64"],
    ["graph", "hypercube", "--n", "4"],
    ["graph", "hasse-probe", "--r", "500"],
    ["graph", "hasse-probe", "--r", "500", "--source", "encoded"],
]


def main():
    exe, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
    schema = json.loads((schema_dir / "fermatseq.schema.json").read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)

    failures = 0
    docs = []
    for args in RUNS:
        proc = subprocess.run([exe] + args, capture_output=True, text=True)
        label = " ".join(args)
        if proc.returncode not in (0, 1, 2):
            print(f"FAIL {label}: exit {proc.returncode}: {proc.stderr.strip()}")
            failures += 1
            continue
        doc = json.loads(proc.stdout)
        errors = sorted(validator.iter_errors(doc), key=str)
        if errors:
            print(f"FAIL {label}: {errors[0].message}")
            failures += 1
        else:
            print(f"ok   {label}")
            docs.append(doc)

    # the schema has to reject something
    if docs:
        broken = copy.deepcopy(docs[0])
        del broken["config"]["seed"]
        mangled = copy.deepcopy(docs[0])
        mangled["hits"] = ["seven"]
        for name, doc in (("missing config key", broken), ("non-numeric hit", mangled)):
            if validator.is_valid(doc):
                print(f"FAIL schema accepted a document with a {name}")
                failures += 1

    print(f"{len(RUNS) - failures}/{len(RUNS)} outputs valid")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
