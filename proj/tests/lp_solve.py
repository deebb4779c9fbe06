#!/usr/bin/env python3
# SPDX-License-Identifier: MIT
"""Solves an LP-format model with HiGHS and prints `name value` lines.

The first line is `Objective <value>`, or `Status <name>` when no optimum
was found. Exits with 77 when highspy is not installed.
"""
import sys

try:
    import highspy
except ImportError:
    sys.exit(77)


def main(path):
    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.setOptionValue("mip_rel_gap", 0.0)
    if h.readModel(path) != highspy.HighsStatus.kOk:
        print("Status ReadError")
        return 1
    h.run()
    status = h.getModelStatus()
    if status != highspy.HighsModelStatus.kOptimal:
        print("Status", h.modelStatusToString(status))
        return 0
    print("Objective", repr(h.getInfo().objective_function_value))
    values = h.getSolution().col_value
    lp = h.getLp()
    for i, name in enumerate(lp.col_names_):
        print(name, repr(values[i]))
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1]))
