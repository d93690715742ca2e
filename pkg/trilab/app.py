"""Argument parsing, subcommand dispatch and entry point."""
from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from typing import Any, Callable, Dict, List, Optional

from .automorphism import aut_classify, aut_oracle
from .canonical import are_equivalent, canonical_form
from .config import resolve_threads
from .constants import DEFAULT_CONE_MAX, JSON_SAFE_INT, SCHEMA
from .ehrhart import (
    bi_dataset, boundary_interior, cone_violations, count_lattice_points, edge_strip, edge_widths,
    ehrhart_polynomial, gcd_pair_set, is_known_cone_exception, strip_violations,
)
from .enumeration import (
    bivariate_series_coeffs, count_closed, count_rect_cumulative, count_square, count_square_exact,
    enumerate_cells, hilbert_coeffs, lattice_points_nQ, oeis_sequences,
)
from .errors import TrilabError, WidthOrderError
from .figures import bi_records_csv, normal_forms_csv, strip_records_csv, write_bi_svg, write_text
from .lattice import Triangle, width_profile

log = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Output helpers
# ---------------------------------------------------------------------------

def _json_safe(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) > JSON_SAFE_INT else obj
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    return obj


def _emit(opts: argparse.Namespace, payload: Dict[str, Any]) -> int:
    payload = dict(payload)
    payload['schema'] = SCHEMA
    text = json.dumps(_json_safe(payload), separators=(',', ':')) + '\n'
    if opts.json:
        write_text(opts.json, text)
        log.info("wrote %s", opts.json)
    else:
        sys.stdout.write(text)
    return 0


def _emit_csv(path: Optional[str], text: str) -> None:
    if path:
        write_text(path, text)
        log.info("wrote %s", path)
    else:
        sys.stdout.write(text)


def _triangle(values: List[int]) -> Triangle:
    return Triangle.from_coords(*values)


def _vec(u: Any) -> Optional[List[int]]:
    return None if u is None else [u.a, u.b]


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_widths(opts: argparse.Namespace) -> int:
    p = width_profile(_triangle(opts.coords))
    return _emit(opts, {'w1': p.w1, 'w2': p.w2, 'u1': _vec(p.u1), 'u2': _vec(p.u2)})


def cmd_canon(opts: argparse.Namespace) -> int:
    T = _triangle(opts.coords)
    nf = canonical_form(T)
    _, M = are_equivalent(T, nf.triangle)
    payload = nf.to_dict()
    payload['map'] = M.to_dict() if M else None
    return _emit(opts, payload)


def cmd_equiv(opts: argparse.Namespace) -> int:
    ok, M = are_equivalent(_triangle(opts.coords[:6]), _triangle(opts.coords[6:]))
    return _emit(opts, {'equivalent': ok, 'map': M.to_dict() if M else None})


def cmd_enumerate(opts: argparse.Namespace) -> int:
    if opts.w2 < 0:
        raise WidthOrderError(f"need --w2 >= 0, got {opts.w2}")
    if opts.w1 is None:
        cells = [(w1, opts.w2) for w1 in range(opts.w2 + 1)]
    else:
        cells = [(opts.w1, opts.w2)]
    members = [nf for _, cell in enumerate_cells(cells, resolve_threads(opts.threads)) for nf in cell]
    if opts.format == 'csv':
        _emit_csv(opts.json, normal_forms_csv(members))
        return 0
    return _emit(opts, {'w1': opts.w1, 'w2': opts.w2, 'count': len(members),
                        'members': [nf.to_dict() for nf in members]})


def cmd_count(opts: argparse.Namespace) -> int:
    fn = count_rect_cumulative if opts.cumulative else count_closed
    return _emit(opts, {'count': fn(opts.w1, opts.w2)})


def cmd_square_count(opts: argparse.Namespace) -> int:
    count = count_square(opts.n)
    payload: Dict[str, Any] = {'count': count}
    checks = [count]
    if opts.check_q:
        payload['q_points'] = lattice_points_nQ(opts.n)
        checks.append(payload['q_points'])
    if opts.check_series:
        payload['series'] = hilbert_coeffs(opts.n)[opts.n]
        checks.append(payload['series'])
    if opts.exact:
        payload['exact'] = count_square_exact(opts.n)
    if len(checks) > 1:
        payload['agree'] = len(set(checks)) == 1
    return _emit(opts, payload)


def cmd_series(opts: argparse.Namespace) -> int:
    if opts.max_deg < 0:
        raise TrilabError(f"need --max-deg >= 0, got {opts.max_deg}")
    series = bivariate_series_coeffs(opts.max_deg)
    coeffs = [[i, j, c] for (i, j), c in sorted(series.coeffs.items())]
    return _emit(opts, {'max_deg': opts.max_deg, 'coefficients': coeffs,
                        'hilbert': hilbert_coeffs(opts.max_deg)})


def cmd_aut(opts: argparse.Namespace) -> int:
    T = _triangle(opts.coords)
    if opts.oracle:
        aut = aut_oracle(T)
        frame = [list(v) for v in T.vertices]
    else:
        nf = canonical_form(T)
        aut = aut_classify(nf)
        frame = [list(v) for v in nf.triangle.vertices]
    payload = aut.to_dict()
    payload['triangle'] = frame
    return _emit(opts, payload)


def cmd_ehrhart(opts: argparse.Namespace) -> int:
    T = _triangle(opts.coords)
    p = boundary_interior(T)
    poly = ehrhart_polynomial(T)
    payload: Dict[str, Any] = {'b': p.b, 'i': p.i, 'polynomial': poly.to_dict(),
                               'edge_widths': [w for _, w in edge_widths(T)]}
    if opts.dilate is not None:
        if opts.dilate < 0:
            raise TrilabError(f"need --dilate >= 0, got {opts.dilate}")
        payload['n'] = opts.dilate
        payload['ehr'] = poly.evaluate(opts.dilate)
        payload['direct'] = count_lattice_points(T.scaled(opts.dilate))
    return _emit(opts, payload)


def cmd_bi_dataset(opts: argparse.Namespace) -> int:
    records = bi_dataset(opts.max_b, opts.max_i, opts.max_w2, resolve_threads(opts.threads))
    hits = cone_violations(records, opts.cones)
    known = [(c, r) for c, r in hits if is_known_cone_exception(c, r)]
    cones = [(c, r) for c, r in hits if not is_known_cone_exception(c, r)]
    strips = strip_violations(records)
    for c, r in known:
        log.info("known exception: (%d, %d) lies in sigma_%d", r.b, r.i, c)
    if cones or strips:
        log.warning("%d cone and %d strip violations", len(cones), len(strips))
    if opts.csv:
        _emit_csv(opts.csv, bi_records_csv(records))
    if opts.svg:
        write_bi_svg(records, opts.svg)
    payload: Dict[str, Any] = {
        'records': len(records),
        'cone_max': opts.cones,
        'cone_exceptions': [[c, r.b, r.i] for c, r in known],
        'cone_violations': [[c, r.b, r.i] for c, r in cones],
        'strip_violations': [[r.b, r.i, w] for r, w in strips],
    }
    if not opts.csv:
        payload['data'] = [[r.b, r.i, r.max_w2, r.has_long_edge, r.count] for r in records]
    return _emit(opts, payload)


def cmd_gcd_set(opts: argparse.Namespace) -> int:
    g = gcd_pair_set(opts.a, opts.b)
    d = math.gcd(opts.a, opts.b)
    return _emit(opts, {'a': g.a, 'b': g.b, 'pairs': sorted([list(p) for p in g.pairs]),
                        'd': d, 'equals_reduced': g.pairs == gcd_pair_set(opts.a, d).pairs})


def cmd_oeis(opts: argparse.Namespace) -> int:
    seqs = oeis_sequences(opts.nmax)
    return _emit(opts, {
        'nmax': opts.nmax,
        'with_long_edge': seqs.with_long_edge,
        'with_long_edge_nondegenerate': seqs.with_long_edge_nondegenerate,
        'no_long_edge': seqs.no_long_edge,
        'differences': seqs.differences,
        'staircase': seqs.staircase,
    })


def cmd_strip(opts: argparse.Namespace) -> int:
    records = edge_strip(opts.w, opts.max_l)
    if opts.csv:
        _emit_csv(opts.csv, strip_records_csv(records))
        return 0
    return _emit(opts, {'w': opts.w, 'max_l': opts.max_l, 'records': [list(r) for r in records]})


COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    'widths': cmd_widths,
    'canon': cmd_canon,
    'equiv': cmd_equiv,
    'enumerate': cmd_enumerate,
    'count': cmd_count,
    'square-count': cmd_square_count,
    'series': cmd_series,
    'aut': cmd_aut,
    'ehrhart': cmd_ehrhart,
    'bi-dataset': cmd_bi_dataset,
    'gcd-set': cmd_gcd_set,
    'oeis': cmd_oeis,
    'strip': cmd_strip,
}


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    p = argparse.ArgumentParser(description='Classify lattice triangles by first and second width')
    p.add_argument('--json', default=None, metavar='PATH', help='Write JSON/CSV output to PATH instead of stdout')
    p.add_argument('-v', '--verbose', action='count', default=0, help='Log progress to stderr (-vv for debug)')
    sub = p.add_subparsers(dest='command', required=True)

    def triangle_cmd(name: str, help_: str, n: int = 6) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_)
        sp.add_argument('coords', type=int, nargs=n, metavar='INT',
                        help='Vertex coordinates x1 y1 x2 y2 x3 y3' + (' (twice)' if n == 12 else ''))
        return sp

    triangle_cmd('widths', 'First and second lattice width with witnesses')
    triangle_cmd('canon', 'Normal form in S_{w1,w2} with a witness map')
    triangle_cmd('equiv', 'Affine unimodular equivalence of two triangles', n=12)

    sp = sub.add_parser('enumerate', help='List S_{w1,w2} (all w1 <= w2 when --w1 is omitted)')
    sp.add_argument('--w1', type=int, default=None, help='First width')
    sp.add_argument('--w2', type=int, required=True, help='Second width')
    sp.add_argument('--format', choices=['json', 'csv'], default='json', help='Output format')
    sp.add_argument('--threads', type=int, default=None, help='Worker threads (overrides TRILAB_THREADS)')

    sp = sub.add_parser('count', help='Closed-form number of classes with widths (w1, w2)')
    sp.add_argument('--w1', type=int, required=True, help='First width')
    sp.add_argument('--w2', type=int, required=True, help='Second width')
    sp.add_argument('--cumulative', action='store_true', help='Count classes inside [0,w1]x[0,w2] instead')

    sp = sub.add_parser('square-count', help='Classes inside [0,n]^2')
    sp.add_argument('--n', type=int, required=True, help='Square side')
    sp.add_argument('--check-q', action='store_true', help='Cross-check against |nQ ∩ Z^4|')
    sp.add_argument('--check-series', action='store_true', help='Cross-check against the Hilbert series')
    sp.add_argument('--exact', action='store_true', help='Also count classes needing exactly [0,n]^2')

    sp = sub.add_parser('series', help='Generating-function coefficients')
    sp.add_argument('--max-deg', type=int, required=True, help='Truncation total degree')

    sp = triangle_cmd('aut', 'Automorphism group of a nondegenerate triangle')
    sp.add_argument('--oracle', action='store_true', help='Use the matrix oracle on the input triangle')

    sp = triangle_cmd('ehrhart', 'Boundary/interior counts and Ehrhart polynomial')
    sp.add_argument('--dilate', type=int, default=None, metavar='N', help='Evaluate at N and count nT directly')

    sp = sub.add_parser('bi-dataset', help='(b, i) pairs of enumerated triangles')
    sp.add_argument('--max-b', type=int, required=True, help='Largest boundary count')
    sp.add_argument('--max-i', type=int, required=True, help='Largest interior count')
    sp.add_argument('--max-w2', type=int, required=True, help='Largest second width')
    sp.add_argument('--cones', type=int, default=DEFAULT_CONE_MAX, help='Check cones sigma_c for c up to this')
    sp.add_argument('--csv', default=None, metavar='PATH', help='Write records as CSV')
    sp.add_argument('--svg', default=None, metavar='PATH', help='Write a scatter plot (needs matplotlib)')
    sp.add_argument('--threads', type=int, default=None, help='Worker threads (overrides TRILAB_THREADS)')

    sp = sub.add_parser('gcd-set', help='The set {(gcd(a,c), gcd(a,b-c))}')
    sp.add_argument('--a', type=int, required=True)
    sp.add_argument('--b', type=int, required=True)

    sp = sub.add_parser('oeis', help='Sequences counted from the normal forms')
    sp.add_argument('--nmax', type=int, required=True, help='Largest square side')

    sp = sub.add_parser('strip', help='(b, i) of triangles with edge width w and edge length up to max-l')
    sp.add_argument('--w', type=int, required=True, help='Width with respect to the edge')
    sp.add_argument('--max-l', type=int, required=True, help='Largest edge lattice length')
    sp.add_argument('--csv', default=None, metavar='PATH', help='Write records as CSV')
    return p.parse_args(argv)


def main(argv: Optional[List[str]] = None) -> int:
    opts = parse_args(argv)
    level = logging.WARNING if opts.verbose == 0 else logging.INFO if opts.verbose == 1 else logging.DEBUG
    logging.basicConfig(stream=sys.stderr, level=level, format='[%(module)s] %(message)s', force=True)
    try:
        return COMMANDS[opts.command](opts)
    except TrilabError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
