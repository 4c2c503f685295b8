#!/usr/bin/env python3
# Copyright 2026 The revmine authors
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
"""Regenerates include/revmine/unicode_tables.hpp from Python's unicodedata.

Run from the repository root:

    python3 tools/gen_unicode_tables.py > include/revmine/unicode_tables.hpp
"""
import sys
import unicodedata


def alnum_ranges():
    """Codepoint ranges for Unicode letters (L*) and decimal digits (Nd)."""
    cps = []
    for cp in range(0x110000):
        if 0xD800 <= cp <= 0xDFFF:
            continue
        cat = unicodedata.category(chr(cp))
        if cat.startswith("L") or cat == "Nd":
            cps.append(cp)
    ranges = []
    start = prev = cps[0]
    for cp in cps[1:]:
        if cp != prev + 1:
            ranges.append((start, prev))
            start = cp
        prev = cp
    ranges.append((start, prev))
    return ranges


def fold_entries():
    """One-to-one lowercase mappings for codepoints that change under lower().

    The handful of codepoints whose lowercase expands to multiple codepoints
    are mapped to the first codepoint of the expansion.
    """
    entries = []
    for cp in range(0x110000):
        if 0xD800 <= cp <= 0xDFFF:
            continue
        low = chr(cp).lower()
        if low and ord(low[0]) != cp:
            entries.append((cp, ord(low[0])))
    return entries


def main():
    out = sys.stdout
    ranges = alnum_ranges()
    folds = fold_entries()
    out.write("// Generated by tools/gen_unicode_tables.py (Unicode %s). Do not edit.\n"
              % unicodedata.unidata_version)
    out.write("#pragma once\n\n#include <array>\n#include <cstdint>\n\n")
    out.write("namespace revmine::detail {\n\n")
    out.write("struct codepoint_range {\n  uint32_t first;\n  uint32_t last;\n};\n\n")
    out.write("// Letters (general category L*) and decimal digits (Nd).\n")
    out.write("inline constexpr std::array<codepoint_range, %d> kAlnumRanges = {{\n" % len(ranges))
    for i in range(0, len(ranges), 4):
        row = ", ".join("{0x%X, 0x%X}" % r for r in ranges[i:i + 4])
        out.write("    %s,\n" % row)
    out.write("}};\n\n")
    out.write("struct fold_entry {\n  uint32_t from;\n  uint32_t to;\n};\n\n")
    out.write("// Simple one-to-one lowercase mappings; identity for anything absent.\n")
    out.write("inline constexpr std::array<fold_entry, %d> kFoldTable = {{\n" % len(folds))
    for i in range(0, len(folds), 4):
        row = ", ".join("{0x%X, 0x%X}" % f for f in folds[i:i + 4])
        out.write("    %s,\n" % row)
    out.write("}};\n\n")
    out.write("}  // namespace revmine::detail\n")


if __name__ == "__main__":
    main()
