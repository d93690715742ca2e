"""CSV and SVG emitters for the (b, i) datasets and normal-form listings."""
from __future__ import annotations

import csv
import io
import logging
from typing import Iterable, List, Sequence

from .canonical import NormalForm
from .constants import BI_CSV_HEADER, STRIP_CSV_HEADER
from .ehrhart import BIRecord, StripRecord
from .errors import TrilabError

log = logging.getLogger(__name__)

try:
    import matplotlib  # type: ignore
    matplotlib.use('Agg')
    import matplotlib.pyplot as plt  # type: ignore
    MATPLOTLIB_AVAILABLE = True
except Exception:  # noqa: BLE001
    plt = None  # type: ignore
    MATPLOTLIB_AVAILABLE = False

NORMAL_FORM_CSV_HEADER = ('w1', 'w2', 'family', 'x1', 'y1', 'x2', 'y2', 'x3', 'y3')


def _to_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator='\n')
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def bi_records_csv(records: Iterable[BIRecord]) -> str:
    return _to_csv(BI_CSV_HEADER, ((r.b, r.i, r.max_w2, int(r.has_long_edge), r.count) for r in records))


def strip_records_csv(records: Iterable[StripRecord]) -> str:
    return _to_csv(STRIP_CSV_HEADER, records)


def normal_forms_csv(members: Iterable[NormalForm]) -> str:
    return _to_csv(NORMAL_FORM_CSV_HEADER,
                   ((nf.w1, nf.w2, nf.family.value) + nf.triangle.coords() for nf in members))


def write_text(path: str, text: str) -> None:
    with open(path, 'w', newline='', encoding='utf-8') as f:
        f.write(text)


def write_bi_svg(records: List[BIRecord], path: str) -> None:
    """Scatter of (b, i) coloured by the largest second width realizing each point."""
    if not MATPLOTLIB_AVAILABLE:
        raise TrilabError("matplotlib is not installed; SVG output unavailable")
    fig, ax = plt.subplots(figsize=(8, 6))
    try:
        pts = ax.scatter([r.b for r in records], [r.i for r in records],
                         c=[r.max_w2 for r in records], s=4, cmap='viridis')
        fig.colorbar(pts, ax=ax, label='largest second width')
        ax.set_xlabel('b (boundary points)')
        ax.set_ylabel('i (interior points)')
        fig.savefig(path, format='svg', bbox_inches='tight', metadata={'Date': None})
    finally:
        plt.close(fig)
    log.info("wrote %d points to %s", len(records), path)
