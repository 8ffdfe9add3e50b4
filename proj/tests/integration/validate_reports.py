# SPDX-License-Identifier: Apache-2.0
"""Runs the CLI on the test configs and validates each report against the JSON schema."""

import json
import subprocess
import sys
from pathlib import Path

import jsonschema


def main() -> int:
    cli, schema_path, data_dir = sys.argv[1:4]
    schema = json.loads(Path(schema_path).read_text())
    validator = jsonschema.Draft202012Validator(schema)
    runs = [
        ["solve", str(Path(data_dir) / "linear_oracle.json")],
        ["compare", str(Path(data_dir) / "linear_oracle.json")],
        ["solve", str(Path(data_dir) / "residual_failure.json")],
    ]
    failures = 0
    for args in runs:
        proc = subprocess.run([cli, *args], capture_output=True, text=True)
        errors = list(validator.iter_errors(json.loads(proc.stdout)))
        for err in errors:
            print(f"{' '.join(args)}: {err.json_path}: {err.message}")
        failures += len(errors)
    print("ok" if failures == 0 else f"{failures} schema violations")
    return 0 if failures == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
