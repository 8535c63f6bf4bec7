"""SVG rendering of planar tropical complexes.

Only the 1-skeleton is drawn: vertices, compact edges, and rays clipped to
the bounding box.  Coordinates are converted to decimals for rendering; the
exact values live in the JSON outputs, and the file says so in a comment.
"""

from fractions import Fraction

from .errors import InputError

COLOR_HEX = {"blue": "#1f4fff", "purple": "#9b30d0", "red": "#d01f1f"}
NEUTRAL = "#444444"

WIDTH = Fraction(480)


def _num(x: Fraction) -> str:
    return f"{float(x):.4f}"


def default_bbox(p):
    xs = []
    ys = []
    for cell in p.cells.values():
        for v in cell.vertices:
            xs.append(v[0])
            ys.append(v[1])
    pad = Fraction(1)
    return (min(xs) - pad, min(ys) - pad, max(xs) + pad, max(ys) + pad)


def _clip_ray(v, r, bbox):
    """Visible parameter range of v + t*r, t >= 0, inside the box."""
    xmin, ymin, xmax, ymax = bbox
    lo, hi = Fraction(0), None
    for vi, ri, a, b in ((v[0], r[0], xmin, xmax), (v[1], r[1], ymin, ymax)):
        if ri == 0:
            if not a <= vi <= b:
                return None
            continue
        t0, t1 = (a - vi) / ri, (b - vi) / ri
        if t0 > t1:
            t0, t1 = t1, t0
        lo = max(lo, t0)
        hi = t1 if hi is None else min(hi, t1)
    if hi is None or lo >= hi:
        return None
    return lo, hi


def complex_svg(p, bbox=None, kappa=None) -> str:
    """Render a 2-dimensional complex; cells are colored when kappa is given."""
    if p.dimension != 2:
        raise InputError("SVG output requires a planar complex")
    if bbox is None:
        bbox = default_bbox(p)
    xmin, ymin, xmax, ymax = (Fraction(b) for b in bbox)
    if xmin >= xmax or ymin >= ymax:
        raise InputError("empty bounding box")
    scale = WIDTH / (xmax - xmin)
    height = (ymax - ymin) * scale

    def place(pt):
        return (pt[0] - xmin) * scale, (ymax - pt[1]) * scale

    def color_of(marking):
        if kappa is None:
            return NEUTRAL
        return COLOR_HEX[kappa[marking]]

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_num(WIDTH)}" '
        f'height="{_num(height)}" viewBox="0 0 {_num(WIDTH)} {_num(height)}">',
        "<!-- coordinates are decimal approximations for rendering only; "
        "exact values live in the JSON outputs -->",
    ]
    edges = []
    dots = []
    for marking in sorted(p.cells, key=sorted):
        cell = p.cells[marking]
        if cell.dimension != 1:
            continue
        stroke = color_of(marking)
        if cell.rays:
            span = _clip_ray(cell.vertices[0], cell.rays[0], (xmin, ymin, xmax, ymax))
            if span is None:
                continue
            v, r = cell.vertices[0], cell.rays[0]
            pts = [
                (v[0] + t * r[0], v[1] + t * r[1]) for t in span
            ]
        else:
            pts = cell.vertices
        (x1, y1), (x2, y2) = place(pts[0]), place(pts[1])
        edges.append(
            f'<line x1="{_num(x1)}" y1="{_num(y1)}" x2="{_num(x2)}" '
            f'y2="{_num(y2)}" stroke="{stroke}" stroke-width="2"/>'
        )
    for marking in sorted(p.cells, key=sorted):
        cell = p.cells[marking]
        if cell.dimension != 0:
            continue
        x, y = place(cell.vertices[0])
        dots.append(
            f'<circle cx="{_num(x)}" cy="{_num(y)}" r="4" '
            f'fill="{color_of(marking)}"/>'
        )
    lines.extend(edges)
    lines.extend(dots)
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
