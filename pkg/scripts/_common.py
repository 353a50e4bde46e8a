import argparse
import csv
import dataclasses
import sys


def parse_config(cls, description):
    """Build an argparse CLI from a dataclass of defaults."""
    p = argparse.ArgumentParser(description=description)
    for f in dataclasses.fields(cls):
        default = f.default if f.default is not dataclasses.MISSING else f.default_factory()
        if isinstance(default, tuple):
            p.add_argument(f"--{f.name.replace('_', '-')}", nargs="+", type=type(default[0]), default=default)
        else:
            p.add_argument(f"--{f.name.replace('_', '-')}", type=type(default), default=default)
    ns = p.parse_args()
    return cls(**{k: tuple(v) if isinstance(v, list) else v for k, v in vars(ns).items()})


def write_rows(rows, out):
    fh = sys.stdout if out == "-" else open(out, "w", newline="")
    w = csv.DictWriter(fh, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    if fh is not sys.stdout:
        fh.close()
