#!/usr/bin/env python3
"""Regenerates one oracle table into a scratch directory and compares it with tests/data.

usage: check_frozen.py dbscan|key_sentence|ranking
"""
import contextlib
import importlib
import io
import sys
import tempfile
from pathlib import Path

from common import DATA

OUTPUT = {"dbscan": "dbscan_cases.json", "key_sentence": "key_sentence_cases.json", "ranking": "ranking_table.json"}

name = sys.argv[1]
module = importlib.import_module(f"{name}_oracle")
with tempfile.TemporaryDirectory() as tmp, contextlib.redirect_stdout(io.StringIO()):
    module.main(Path(tmp))
    fresh = (Path(tmp) / OUTPUT[name]).read_bytes()
frozen = (DATA / OUTPUT[name]).read_bytes()
if fresh != frozen:
    sys.exit(f"{OUTPUT[name]} differs from a fresh oracle run")
print(f"{OUTPUT[name]}: frozen data matches the oracle")
