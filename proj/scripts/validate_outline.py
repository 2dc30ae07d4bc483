#!/usr/bin/env python3
"""usage: validate_outline.py SCHEMA OUTLINE"""
import json
import sys

import jsonschema

schema, outline = (json.load(open(p, encoding="utf-8")) for p in sys.argv[1:3])
jsonschema.validate(outline, schema)
print(f"valid: {len(outline['topics'])} topics")
