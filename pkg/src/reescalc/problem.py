"""Problem-file front end: a small block-structured key-value format.

Example:

    ring {
      vars = X, Y
      char = 0
    }
    matrix {
      row = X^3, X^2*Y^2, X*Y^3, Y^5, 0, 0, 0
      row = 0, 0, X^3, 0, X^2*Y^2, X*Y^4, Y^5
    }
    candidates {
      col = X*Y^4, 0
    }
    factors {
      ideal = X, Y^2
    }
    scale {
      ideal = X, Y
    }
    options {
      lmax = 10
      window = 2
      nmax = 4
      deadline = 300
    }

Polynomial entries use the expression grammar and are separated by
commas.  `#` starts a comment.  Every block is optional except matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .closures import ClosureOptions
from .context import RingContext
from .errors import InputError
from .groebner import SubmoduleData
from .poly import parse_poly
from .rees import ModuleEmbedding


@dataclass
class ProblemFile:
    ctx: RingContext
    rows: list
    candidates: list = dc_field(default_factory=list)
    factors: list = dc_field(default_factory=list)
    scale: list = None
    options: dict = dc_field(default_factory=dict)

    def embedding(self):
        parsed = [[parse_poly(e, self.ctx) for e in row] for row in self.rows]
        return ModuleEmbedding.from_matrix(self.ctx, parsed)

    def candidate_columns(self):
        rank = len(self.rows)
        cols = []
        for col in self.candidates:
            if len(col) != rank:
                raise InputError(
                    f"candidate column of length {len(col)}, expected {rank}")
            cols.append(tuple(parse_poly(e, self.ctx) for e in col))
        return cols

    def factor_ideals(self):
        return [SubmoduleData.ideal(self.ctx,
                                    [parse_poly(e, self.ctx) for e in gens])
                for gens in self.factors]

    def scale_ideal(self):
        if self.scale is None:
            return None
        return SubmoduleData.ideal(self.ctx,
                                   [parse_poly(e, self.ctx) for e in self.scale])

    def closure_options(self):
        opts = ClosureOptions()
        if "lmax" in self.options:
            opts.l_max = self.options["lmax"]
        if "window" in self.options:
            opts.window = self.options["window"]
        if "smax" in self.options:
            opts.s_max = self.options["smax"]
        if "deadline" in self.options:
            opts.deadline_seconds = float(self.options["deadline"])
        return opts


_INT_OPTIONS = ("lmax", "window", "nmax", "smax", "index")


def _parse_blocks(text):
    blocks = []
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.endswith("{"):
            if current is not None:
                raise InputError(f"line {lineno}: nested blocks not allowed")
            name = line[:-1].strip()
            if not name.isidentifier():
                raise InputError(f"line {lineno}: bad block name {name!r}")
            current = (name, [])
            continue
        if line == "}":
            if current is None:
                raise InputError(f"line {lineno}: stray closing brace")
            blocks.append(current)
            current = None
            continue
        if "=" not in line:
            raise InputError(f"line {lineno}: expected key = value")
        key, value = line.split("=", 1)
        key = key.strip()
        value = value.strip()
        if current is None:
            raise InputError(f"line {lineno}: {key!r} outside any block")
        current[1].append((key, value, lineno))
    if current is not None:
        raise InputError(f"unclosed block {current[0]!r}")
    return blocks


def _split_entries(value):
    return [e.strip() for e in value.split(",")]


def parse_problem(text, char_override=None):
    blocks = _parse_blocks(text)
    base_vars = ("X", "Y")
    char = 0
    rows = []
    candidates = []
    factors = []
    scale = None
    options = {}
    seen = set()
    for name, items in blocks:
        if name in seen and name not in ("factors",):
            raise InputError(f"duplicate block {name!r}")
        seen.add(name)
        if name == "ring":
            for key, value, lineno in items:
                if key == "vars":
                    base_vars = tuple(_split_entries(value))
                elif key == "char":
                    char = int(value)
                else:
                    raise InputError(f"line {lineno}: unknown ring key {key!r}")
        elif name == "matrix":
            for key, value, lineno in items:
                if key != "row":
                    raise InputError(f"line {lineno}: expected row entries")
                rows.append(_split_entries(value))
        elif name == "candidates":
            for key, value, lineno in items:
                if key != "col":
                    raise InputError(f"line {lineno}: expected col entries")
                candidates.append(_split_entries(value))
        elif name == "factors":
            for key, value, lineno in items:
                if key != "ideal":
                    raise InputError(f"line {lineno}: expected ideal entries")
                factors.append(_split_entries(value))
        elif name == "scale":
            for key, value, lineno in items:
                if key != "ideal":
                    raise InputError(f"line {lineno}: expected ideal entries")
                if scale is not None:
                    raise InputError(f"line {lineno}: one scale ideal only")
                scale = _split_entries(value)
        elif name == "options":
            for key, value, lineno in items:
                if key in _INT_OPTIONS:
                    options[key] = int(value)
                elif key == "deadline":
                    options[key] = float(value)
                else:
                    raise InputError(f"line {lineno}: unknown option {key!r}")
        else:
            raise InputError(f"unknown block {name!r}")
    if not rows:
        raise InputError("problem file has no matrix block")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise InputError("matrix rows have unequal lengths")
    if char_override is not None:
        char = char_override
    ctx = RingContext(characteristic=char, base_vars=base_vars)
    return ProblemFile(ctx, rows, candidates, factors, scale, options)
