#!/usr/bin/env python3
# Copyright 2026 The Truecase Authors.
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
"""Generates core/src/case_table.inc: one-scalar-value case mappings.

A scalar value whose full upper (lower) mapping is not exactly one scalar
value gets no entry and is therefore caseless in that direction.
"""

import sys
import unicodedata


def pairs(fn):
    out = []
    for cp in range(0x110000):
        if 0xD800 <= cp <= 0xDFFF:
            continue
        c = chr(cp)
        m = fn(c)
        if len(m) == 1 and m != c:
            out.append((cp, ord(m)))
    return out


def emit(name, table, f):
    f.write(f"constexpr CaseMapping {name}[] = {{\n")
    for a, b in table:
        f.write(f"    {{0x{a:04X}, 0x{b:04X}}},\n")
    f.write("};\n\n")


def main():
    path = sys.argv[1]
    with open(path, "w") as f:
        f.write("// Generated by scripts/gen_case_table.py from Unicode "
                f"{unicodedata.unidata_version}. Do not edit.\n\n")
        emit("kUpperMappings", pairs(str.upper), f)
        emit("kLowerMappings", pairs(str.lower), f)


if __name__ == "__main__":
    main()
