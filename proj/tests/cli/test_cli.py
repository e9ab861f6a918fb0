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
"""End-to-end checks of the ghk command line: exit codes, report layout, schemas."""

import argparse
import csv
import json
import os
import re
import subprocess
import sys
import tempfile
import unittest
from pathlib import Path

import jsonschema

ARGS = None
HEADER = ["run_id", "command", "param_json", "value_re", "value_im", "norm", "provenance", "verdict"]


def run(*argv, env=None):
    full_env = dict(os.environ, **(env or {}))
    return subprocess.run([ARGS.cli, *argv], capture_output=True, text=True, env=full_env, timeout=600)


def validator(name):
    schema = json.loads((ARGS.source / "docs" / name).read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    return jsonschema.Draft202012Validator(schema)


class CliTest(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def config(self, doc, name="config.json"):
        path = self.dir / name
        path.write_text(json.dumps(doc))
        return str(path)

    def csv_rows(self, path):
        with open(path, newline="") as f:
            return list(csv.reader(f))

    def test_constant_seminorm_row(self):
        out = self.dir / "out.csv"
        r = run("run", str(ARGS.source / "configs" / "seminorm_constant.json"), "--out", str(out))
        self.assertEqual(r.returncode, 0, r.stderr)
        rows = self.csv_rows(out)
        self.assertEqual(rows[0], HEADER)
        self.assertEqual(len(rows), 2)
        self.assertEqual(float(rows[1][3]), 1.0)
        self.assertEqual(float(rows[1][4]), 0.0)

    def test_order_limit_is_config_error(self):
        r = run("run", str(ARGS.source / "configs" / "seminorm_constant.json"), "--set", "s=9",
                "--out", str(self.dir / "x.csv"))
        self.assertEqual(r.returncode, 2)
        self.assertIn("s = 9", r.stderr)
        self.assertFalse((self.dir / "x.csv").exists())

    def test_unknown_key_rejected(self):
        path = self.config({"command": "seminorm", "system": {"kind": "cyclic", "N": 4},
                            "function": {"kind": "constant", "value": 1}, "s": 1, "bogus": 1})
        self.assertEqual(run("run", path).returncode, 2)
        self.assertEqual(run("run", str(self.dir / "missing.json")).returncode, 2)
        self.assertEqual(run("frobnicate").returncode, 2)

    def test_resource_cap_exit(self):
        path = self.config({"command": "equidist", "test": "distribution", "N": 1000, "t": 0.5,
                            "sequence": {"kind": "enumeration", "ell": 2, "alpha": "sqrt(2) - 1",
                                         "u": "1/4", "v": "3/4", "scan_bound": 5}})
        r = run("run", path, "--out", str(self.dir / "r.csv"))
        self.assertEqual(r.returncode, 3, r.stderr)

    def test_failed_verdict_exit(self):
        table = json.loads((ARGS.source / "data" / "expected_values.json").read_text())
        table["entries"]["d0_dual/census_mismatches"]["value"] = 5
        tpath = self.dir / "table.json"
        tpath.write_text(json.dumps(table))
        path = self.config({"command": "scenario", "scenario": "d0_dual", "expected_values": str(tpath)})
        r = run("run", path, "--out", str(self.dir / "f.json"))
        self.assertEqual(r.returncode, 1, r.stderr)
        doc = json.loads((self.dir / "f.json").read_text())
        self.assertEqual(doc["verdict"], "fail")

    def test_empty_result_is_header_only(self):
        tpath = self.dir / "empty.json"
        tpath.write_text('{"entries": {}}')
        out = self.dir / "empty.csv"
        r = run("run", str(ARGS.source / "configs" / "table.json"), "--set", f"path={tpath}", "--out", str(out))
        self.assertEqual(r.returncode, 0, r.stderr)
        self.assertEqual(self.csv_rows(out), [HEADER])

    def test_twelve_significant_digits(self):
        out = self.dir / "n.csv"
        r = run("run", str(ARGS.source / "configs" / "equidist_nalpha.json"), "--out", str(out))
        self.assertEqual(r.returncode, 0, r.stderr)
        for row in self.csv_rows(out)[1:]:
            for cell in row[3:6]:
                if cell:
                    digits = re.sub(r"[-.]|e.*$", "", cell).lstrip("0")
                    self.assertLessEqual(len(digits), 12, cell)

    def test_seminorm_laws_report(self):
        out = self.dir / "laws.json"
        r = run("run", str(ARGS.source / "configs" / "seminorm_laws.json"), "--out", str(out))
        self.assertEqual(r.returncode, 0, r.stderr)
        doc = json.loads(out.read_text())
        validator("report.schema.json").validate(doc)
        checks = doc["reports"][0]["checks"]
        self.assertEqual(len(checks), 5)
        self.assertTrue(all(c["verdict"] == "pass" for c in checks))
        self.assertEqual([p.name for p in self.dir.iterdir()], ["laws.json"])

    def test_seed_and_set_overrides(self):
        base = str(ARGS.source / "configs" / "seminorm_laws.json")
        a, b, c = (self.dir / n for n in ("a.csv", "b.csv", "c.csv"))
        self.assertEqual(run("run", base, "--seed", "7", "--out", str(a)).returncode, 0)
        self.assertEqual(run("run", base, "--set", "params.seed=7", "--out", str(b)).returncode, 0)
        self.assertEqual(run("run", base, "--seed", "8", "--out", str(c)).returncode, 0)
        rows_a, rows_b, rows_c = self.csv_rows(a), self.csv_rows(b), self.csv_rows(c)
        self.assertEqual([r[3:] for r in rows_a], [r[3:] for r in rows_b])
        self.assertNotEqual(rows_a, rows_c)

    def test_format_flag(self):
        out = self.dir / "report.out"
        r = run("run", str(ARGS.source / "configs" / "d0_dual.json"), "--format", "json", "--out", str(out))
        self.assertEqual(r.returncode, 0, r.stderr)
        validator("report.schema.json").validate(json.loads(out.read_text()))
        self.assertEqual(run("run", str(ARGS.source / "configs" / "d0_dual.json"), "--format", "xml").returncode, 2)

    def test_thread_count_invariance(self):
        cfg = str(ARGS.source / "configs" / "seminorm_laws.json")
        outs = []
        for threads in ("1", "3"):
            out = self.dir / f"t{threads}.json"
            r = run("run", cfg, "--out", str(out), env={"GHK_THREADS": threads})
            self.assertEqual(r.returncode, 0, r.stderr)
            outs.append(out.read_bytes())
        self.assertEqual(outs[0], outs[1])

    def test_shipped_configs_validate(self):
        v = validator("config.schema.json")
        configs = sorted((ARGS.source / "configs").rglob("*.json"))
        self.assertTrue(configs)
        for path in configs:
            with self.subTest(config=path.name):
                v.validate(json.loads(path.read_text()))
        with self.assertRaises(jsonschema.ValidationError):
            v.validate({"command": "dual", "system": {"kind": "skew"}, "function": {"kind": "constant"}, "s": 0})


def main():
    global ARGS
    parser = argparse.ArgumentParser()
    parser.add_argument("--cli", required=True)
    parser.add_argument("--source", required=True, type=Path)
    ARGS, rest = parser.parse_known_args()
    unittest.main(argv=[sys.argv[0], *rest], verbosity=2)


if __name__ == "__main__":
    main()
