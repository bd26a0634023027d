#!/usr/bin/env python3
# Licensed under the Apache License, Version 2.0.
# http://www.apache.org/licenses/LICENSE-2.0
#
# Regenerates include/ampd/unicode_tables.hpp from the Python unicodedata
# module. Tokenization treats a codepoint as alphanumeric iff its general
# category is one of the letter categories (L*) or decimal digit (Nd).
# Lowercasing uses the simple (1:1) mappings only; multi-codepoint
# expansions are left untouched.

import sys
import unicodedata


def alnum_ranges():
    ranges = []
    start = None
    prev = None
    for cp in range(0x110000):
        cat = unicodedata.category(chr(cp))
        is_alnum = cat.startswith("L") or cat == "Nd"
        if is_alnum:
            if start is None:
                start = cp
            prev = cp
        elif start is not None:
            ranges.append((start, prev))
            start = None
    if start is not None:
        ranges.append((start, prev))
    return ranges


def lower_deltas():
    # (codepoint, lowered) pairs where a simple 1:1 lowercase mapping exists.
    pairs = []
    for cp in range(0x110000):
        low = chr(cp).lower()
        if len(low) == 1 and low != chr(cp):
            pairs.append((cp, ord(low)))
    return pairs


def main(out_path):
    ranges = alnum_ranges()
    lowers = lower_deltas()
    with open(out_path, "w") as f:
        f.write("// Licensed under the Apache License, Version 2.0.\n")
        f.write("// http://www.apache.org/licenses/LICENSE-2.0\n")
        f.write("//\n")
        f.write("// Generated by tools/gen_unicode_tables.py from Python "
                "unicodedata %s. Do not edit by hand.\n" % unicodedata.unidata_version)
        f.write("#pragma once\n\n")
        f.write("#include <cstdint>\n\n")
        f.write("namespace ampd::detail {\n\n")
        f.write("struct CpRange { char32_t lo; char32_t hi; };\n\n")
        f.write("// Codepoints with general category L* or Nd.\n")
        f.write("inline constexpr CpRange kAlnumRanges[] = {\n")
        for lo, hi in ranges:
            f.write("    {0x%X, 0x%X},\n" % (lo, hi))
        f.write("};\n\n")
        f.write("struct CpPair { char32_t from; char32_t to; };\n\n")
        f.write("// Simple one-to-one lowercase mappings.\n")
        f.write("inline constexpr CpPair kLowerPairs[] = {\n")
        for cp, low in lowers:
            f.write("    {0x%X, 0x%X},\n" % (cp, low))
        f.write("};\n\n")
        f.write("}  // namespace ampd::detail\n")
    sys.stderr.write("wrote %s: %d alnum ranges, %d lowercase pairs\n"
                     % (out_path, len(ranges), len(lowers)))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "unicode_tables.hpp")
