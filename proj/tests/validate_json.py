"""Validates opalg JSON output and shipped rule sets against docs/schemas.

usage: validate_json.py <opalg binary> <repo root>
"""

import json
import pathlib
import subprocess
import sys

import jsonschema
from referencing import Registry, Resource

opalg, root = sys.argv[1], pathlib.Path(sys.argv[2])
schemas = {p.name: json.loads(p.read_text()) for p in (root / "docs" / "schemas").glob("*.json")}
registry = Registry().with_resources((s["$id"], Resource.from_contents(s)) for s in schemas.values())


def check(schema, doc, what):
    cls = jsonschema.validators.validator_for(schemas[schema])
    cls.check_schema(schemas[schema])
    cls(schemas[schema], registry=registry).validate(doc)
    print(f"ok  {what}")


def run(*args, expect=0):
    p = subprocess.run([opalg, *args], capture_output=True, text=True)
    if p.returncode != expect:
        sys.exit(f"{args}: exit {p.returncode}, expected {expect}\n{p.stderr}")
    return json.loads(p.stdout)


for f in sorted((root / "rulesets").glob("*.json")):
    check("ruleset.schema.json", json.loads(f.read_text()), f.name)

check("report.schema.json", run("verify", "--theory", "rb", "--json", "--traces", "--cofactors", "1"), "verify rb")
check("report.schema.json", run("verify", "--theory", "rb-broken", "--json", "--cofactors", "1", expect=1),
      "verify rb-broken")
check("trace.schema.json", run("nf", "--theory", "drb", "--trace", "d(x)*d(y)*p(p(x))"), "nf trace")
for c in run("compose", "--theory", "d", "--json", "--traces",
             "d(u)*d(v) + L^-1*d(u)*v + L^-1*u*d(v) - L^-1*d(u*v)",
             "d(v)*d(w) + L^-1*d(v)*w + L^-1*v*d(w) - L^-1*d(v*w)"):
    check("composition.schema.json", c, "compose")
check("axioms.schema.json", run("hurwitz-check", "--samples", "20", "--json"), "hurwitz-check")
check("axioms.schema.json", run("hurwitz-check", "--model", "degenerate", "--samples", "20", "--json"),
      "degenerate check")
