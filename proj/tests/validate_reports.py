#!/usr/bin/env python3
# Copyright 2026 The arbac-reach Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Runs every report-producing subcommand and validates its JSON output."""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema


def main():
    binary, schema_path, policies = sys.argv[1], sys.argv[2], pathlib.Path(sys.argv[3])
    schema = json.loads(pathlib.Path(schema_path).read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)

    tmp = pathlib.Path(tempfile.mkdtemp())
    untrusted = tmp / "staff_untrusted.arbac"
    untrusted.write_text(
        (policies / "staff.arbac").read_text().replace(" (trusted Carol)", "")
        .replace("(pair (>= FullTime) Access)", "(pair FullTime)"))
    generated = tmp / "gen.arbac"
    subprocess.run([binary, "gen", "--seed", "7", "-o", str(generated)], check=True)

    d = str(policies / "one_user.arbac")
    runs = [
        ["analyze", d],
        ["analyze", d, "--no-timing", "--mode", "monolithic"],
        ["analyze", d, "--max-iterations", "1"],
        ["analyze", str(untrusted)],
        ["analyze", str(generated)],
        ["analyze", str(policies / "trusted_assign.arbac")],
        ["bounded", d, "--bound", "1", "--upto"],
        ["bounded", str(untrusted), "--bound", "6", "--upto"],
        ["invariant", d, "--psi", "(forall ((u User)) (not (ua u er8)))"],
        ["invariant", d, "--psi", "(forall ((u User)) true)"],
        ["contain", d, "--r1", "er1", "--r2", "er2"],
        ["wp", d, "--user", "eu"],
        ["oracle", d],
        ["oracle", str(untrusted)],
        ["bench", "--goal-sizes", "1,2", "--instances", "2", "--roles", "4",
         "--csv", str(tmp / "b.csv")],
    ]
    failures = 0
    for args in runs:
        proc = subprocess.run([binary, *args], capture_output=True, text=True)
        if proc.returncode not in (0, 3):
            print(f"FAIL {' '.join(args)}: exit {proc.returncode}: {proc.stderr}")
            failures += 1
            continue
        try:
            validator.validate(json.loads(proc.stdout))
            print(f"ok   {' '.join(args)}")
        except (json.JSONDecodeError, jsonschema.ValidationError) as e:
            print(f"FAIL {' '.join(args)}: {e}")
            failures += 1
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
