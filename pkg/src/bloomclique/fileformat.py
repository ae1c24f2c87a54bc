"""Bit-exact text serialization for instances and solutions.

Instance files:

    OWF1 v=<variant> n=<int> kind=<cw|tp|poly>
    H <idx> CW a=<int> b=<int> p=<int> m=<int>          (carried specs only)
    H <idx> TP r1=<hex> c=<int> m=<int>
    H <idx> PL k=<int> p=<int> m=<int> coeffs=<ints,>
    A <idx> m=<int> bits=<hex>
    P <r1> ... <rc>

Basic and multi files carry their hash specs; derived and masked files
have no H lines because their specs come from the clique.  Array payloads
are lowercase hex, two digits per byte, bytes in bit-index order, pad
bits zero.  Toeplitz first rows serialize as fixed-width big-endian hex
of the 2c-bit row value.  Solution files are a single line `S v1 ... vc`
with the vertices strictly ascending.

Parsing is strict: wrong counts, lengths, ordering, case, or padding all
raise ParseError.
"""

from __future__ import annotations

import re

from .bits import BitArray
from .errors import BloomCliqueError, ParseError
from .extract import VARIANTS
from .hashing import (
    HASH_KINDS,
    CWHashSpec,
    PolyHashSpec,
    ToeplitzHashSpec,
)
from .owf import Instance, Solution, _dims
from .params import derive_params

_MAGIC = "OWF1"
_TAGS = {"cw": "CW", "tp": "TP", "poly": "PL"}


def _r1_hex(spec: ToeplitzHashSpec) -> str:
    width = (2 * spec.c + 3) // 4
    return format(spec.r1, f"0{width}x")


def serialize_instance(inst: Instance) -> str:
    """The canonical text form; parse_instance inverts it exactly."""
    if inst.k0 is not None and inst.k0 != inst.params.c:
        raise ParseError("only default-k0 instances have a file form")
    lines = [f"{_MAGIC} v={inst.variant} n={inst.n} kind={inst.kind}"]
    for i, spec in enumerate(inst.specs, start=1):
        if isinstance(spec, CWHashSpec):
            lines.append(
                f"H {i} CW a={spec.a} b={spec.b} p={spec.p} m={spec.m}"
            )
        elif isinstance(spec, ToeplitzHashSpec):
            lines.append(f"H {i} TP r1={_r1_hex(spec)} c={spec.c} m={spec.m}")
        else:
            coeffs = ",".join(str(a) for a in spec.coeffs)
            lines.append(
                f"H {i} PL k={spec.k} p={spec.p} m={spec.m} coeffs={coeffs}"
            )
    for i, arr in enumerate(inst.arrays, start=1):
        lines.append(f"A {i} m={arr.m} bits={arr.to_hex()}")
    lines.append("P " + " ".join(str(r) for r in inst.perm))
    return "\n".join(lines) + "\n"


_HEADER_RE = re.compile(
    rf"^{_MAGIC} v=(\w+) n=(\d+) kind=(\w+)$"
)
_H_CW_RE = re.compile(r"^H (\d+) CW a=(\d+) b=(\d+) p=(\d+) m=(\d+)$")
_H_TP_RE = re.compile(r"^H (\d+) TP r1=([0-9a-f]+) c=(\d+) m=(\d+)$")
_H_PL_RE = re.compile(
    r"^H (\d+) PL k=(\d+) p=(\d+) m=(\d+) coeffs=(\d+(?:,\d+)*)$"
)
_A_RE = re.compile(r"^A (\d+) m=(\d+) bits=([0-9a-f]+)$")
_P_RE = re.compile(r"^P( \d+)+$")


def parse_instance(text: str) -> Instance:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ParseError("empty instance file")
    head = _HEADER_RE.match(lines[0])
    if not head:
        raise ParseError(f"bad header: {lines[0]!r}")
    variant, n, kind = head.group(1), int(head.group(2)), head.group(3)
    if variant not in VARIANTS:
        raise ParseError(f"unknown variant {variant!r}")
    if kind not in HASH_KINDS:
        raise ParseError(f"unknown hash kind {kind!r}")
    try:
        ps = derive_params(n)
    except BloomCliqueError as e:
        raise ParseError(f"bad n={n}: {e}") from e
    want_arrays, want_len, want_specs = _dims(ps, variant)

    specs = []
    arrays = []
    perm = None
    seen_a = False
    seen_p = False
    for line in lines[1:]:
        if line.startswith("H "):
            if seen_a or seen_p:
                raise ParseError("H lines must precede A and P lines")
            specs.append(_parse_h(line, kind, ps, len(specs) + 1))
        elif line.startswith("A "):
            if seen_p:
                raise ParseError("A lines must precede the P line")
            seen_a = True
            arrays.append(_parse_a(line, want_len, len(arrays) + 1))
        elif line.startswith("P "):
            if seen_p:
                raise ParseError("duplicate P line")
            seen_p = True
            perm = _parse_p(line)
        else:
            raise ParseError(f"unrecognized line: {line!r}")
    if len(specs) != want_specs:
        raise ParseError(
            f"{variant} expects {want_specs} H lines, found {len(specs)}"
        )
    if len(arrays) != want_arrays:
        raise ParseError(
            f"{variant} expects {want_arrays} A lines, found {len(arrays)}"
        )
    if perm is None:
        raise ParseError("missing P line")
    try:
        return Instance(
            variant=variant, n=n, kind=kind, arrays=tuple(arrays),
            specs=tuple(specs), perm=perm,
        )
    except BloomCliqueError as e:
        raise ParseError(str(e)) from e


def _parse_h(line: str, kind: str, ps, expect_idx: int):
    tag = _TAGS[kind]
    if f" {tag} " not in line:
        raise ParseError(f"H line kind disagrees with header: {line!r}")
    if kind == "cw":
        mt = _H_CW_RE.match(line)
        if not mt:
            raise ParseError(f"bad CW spec line: {line!r}")
        idx, a, b, p, m = (int(g) for g in mt.groups())
        _check_idx(idx, expect_idx)
        return _wrap(lambda: CWHashSpec(a=a, b=b, p=p, m=m), line)
    if kind == "tp":
        mt = _H_TP_RE.match(line)
        if not mt:
            raise ParseError(f"bad TP spec line: {line!r}")
        idx = int(mt.group(1))
        _check_idx(idx, expect_idx)
        c, m = int(mt.group(3)), int(mt.group(4))
        hexs = mt.group(2)
        if len(hexs) != (2 * c + 3) // 4:
            raise ParseError(f"TP row must be {(2 * c + 3) // 4} hex digits: {line!r}")
        return _wrap(lambda: ToeplitzHashSpec(r1=int(hexs, 16), c=c, m=m), line)
    mt = _H_PL_RE.match(line)
    if not mt:
        raise ParseError(f"bad PL spec line: {line!r}")
    idx, k, p, m = (int(mt.group(i)) for i in range(1, 5))
    _check_idx(idx, expect_idx)
    coeffs = tuple(int(s) for s in mt.group(5).split(","))
    if len(coeffs) != k:
        raise ParseError(f"PL k={k} but {len(coeffs)} coefficients: {line!r}")
    return _wrap(lambda: PolyHashSpec(coeffs=coeffs, p=p, m=m), line)


def _parse_a(line: str, want_len: int, expect_idx: int) -> BitArray:
    mt = _A_RE.match(line)
    if not mt:
        raise ParseError(f"bad array line: {line!r}")
    idx, m, hexs = int(mt.group(1)), int(mt.group(2)), mt.group(3)
    _check_idx(idx, expect_idx)
    if m != want_len:
        raise ParseError(f"array length {m}, expected {want_len}: {line!r}")
    if len(hexs) != 2 * ((m + 7) // 8):
        raise ParseError(
            f"array payload must be {2 * ((m + 7) // 8)} hex digits: {line!r}"
        )
    return _wrap(lambda: BitArray.from_hex(m, hexs), line)


def _parse_p(line: str) -> tuple[int, ...]:
    if not _P_RE.match(line):
        raise ParseError(f"bad perm line: {line!r}")
    return tuple(int(s) for s in line.split()[1:])


def _check_idx(idx: int, expect: int) -> None:
    if idx != expect:
        raise ParseError(f"line index {idx}, expected {expect}")


def _wrap(build, line: str):
    try:
        return build()
    except BloomCliqueError as e:
        raise ParseError(f"{e} in line {line!r}") from e


def serialize_solution(sol: Solution) -> str:
    return "S " + " ".join(str(v) for v in sol.vertices) + "\n"


_S_RE = re.compile(r"^S( \d+)+$")


def parse_solution(text: str) -> Solution:
    lines = [ln for ln in text.split("\n") if ln != ""]
    if len(lines) != 1 or not _S_RE.match(lines[0]):
        raise ParseError("solution must be one `S v1 ... vc` line")
    verts = tuple(int(s) for s in lines[0].split()[1:])
    try:
        return Solution(vertices=verts)
    except BloomCliqueError as e:
        raise ParseError(str(e)) from e
