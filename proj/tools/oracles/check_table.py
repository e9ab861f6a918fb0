# Copyright 2026 The ghk-lab Authors
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

"""Reruns every oracle named in the expected-values table and compares.

Numeric entries must agree with their oracle within the entry tolerance;
"at_most" entries only need the oracle value to sit below the threshold.
Lists and closed-form strings must match exactly. Exits 1 on any mismatch.

Usage: python3 check_table.py [table.json]   (run from the repository root)
"""

import json
import shlex
import subprocess
import sys
from collections import defaultdict


def pick(out, want):
    if isinstance(out, dict):
        if isinstance(want, str):
            return out.get("symbolic")
        for key in ("gap", "max_deviation"):
            if key in out:
                return out[key]
    return out


def main():
    path = sys.argv[1] if len(sys.argv) > 1 else "data/expected_values.json"
    entries = json.load(open(path))["entries"]
    by_command = defaultdict(list)
    for key, entry in entries.items():
        if "oracle_command" in entry:
            by_command[entry["oracle_command"]].append((key, entry))

    failures = 0
    for command, items in sorted(by_command.items()):
        argv = shlex.split(command)
        argv[0] = sys.executable
        (result,) = json.loads(subprocess.run(argv, check=True, capture_output=True, text=True).stdout).values()
        for key, entry in items:
            want, tol = entry["value"], entry.get("tolerance", 0)
            got = pick(result, want)
            if isinstance(got, (int, float)) and isinstance(want, (int, float)):
                if entry.get("comparison") == "at_most":
                    ok = got <= want + tol
                else:
                    ok = abs(got - want) <= tol
            else:
                ok = got == want
            failures += not ok
            print(f"{'ok  ' if ok else 'FAIL'} {key}: oracle {got!r} table {want!r}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
