# Copyright 2026 The stirpour Authors. All Rights Reserved.
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
# ==============================================================================
"""Validates twin reports against the schema and checks N and history length agree."""

import json
import sys

import jsonschema


def main(schema_path, *reports):
    with open(schema_path) as f:
        schema = json.load(f)
    for path in reports:
        with open(path) as f:
            report = json.load(f)
        jsonschema.validate(report, schema)
        if len(report["calibration_history"]) != report["N"]:
            sys.exit(f"{path}: calibration history has {len(report['calibration_history'])} entries, N={report['N']}")
        if len(report["per_seed_Z"]) != len(report["seeds"]["verify"]):
            sys.exit(f"{path}: per-seed Z and verify seeds differ in length")
    print(f"{len(reports)} report(s) valid")


if __name__ == "__main__":
    main(*sys.argv[1:])
