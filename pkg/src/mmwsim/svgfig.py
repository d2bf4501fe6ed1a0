"""Minimal deterministic SVG writer for CDF curves (no plotting dependency)."""

_PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#aec7e8", "#ffbb78",
)

_WIDTH, _HEIGHT = 720, 480
_ML, _MR, _MT, _MB = 70, 170, 30, 50


def _esc(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def render_cdf_svg(curves, title: str = "", x_label: str = "ratio", y_label: str = "F") -> str:
    """Render piecewise-linear CDF curves with a legend.

    ``curves`` is a sequence of (label, xs, fs) triples. Output is plain
    SVG text with a fixed layout, byte-stable for identical inputs.
    """
    if not curves:
        raise ValueError("need at least one curve")
    x_min = min(min(xs) for _, xs, _ in curves)
    x_max = max(max(xs) for _, xs, _ in curves)
    if x_max <= x_min:
        x_max = x_min + 1.0
    plot_w = _WIDTH - _ML - _MR
    plot_h = _HEIGHT - _MT - _MB

    def sx(x):
        return _ML + (x - x_min) / (x_max - x_min) * plot_w

    def sy(f):
        return _MT + (1.0 - f) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<rect x="{_ML}" y="{_MT}" width="{plot_w}" height="{plot_h}" '
        'fill="none" stroke="#333" stroke-width="1"/>',
    ]
    if title:
        parts.append(
            f'<text x="{_ML + plot_w / 2:.1f}" y="20" text-anchor="middle" '
            f'font-family="sans-serif" font-size="14">{_esc(title)}</text>'
        )
    for i in range(5):
        frac = i / 4.0
        gx = _ML + frac * plot_w
        gy = _MT + frac * plot_h
        xv = x_min + frac * (x_max - x_min)
        parts.append(
            f'<line x1="{gx:.1f}" y1="{_MT}" x2="{gx:.1f}" y2="{_MT + plot_h}" '
            'stroke="#ddd" stroke-width="0.5"/>'
        )
        parts.append(
            f'<line x1="{_ML}" y1="{gy:.1f}" x2="{_ML + plot_w}" y2="{gy:.1f}" '
            'stroke="#ddd" stroke-width="0.5"/>'
        )
        parts.append(
            f'<text x="{gx:.1f}" y="{_MT + plot_h + 18}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{xv:.3g}</text>'
        )
        parts.append(
            f'<text x="{_ML - 8}" y="{_MT + (1 - frac) * plot_h + 4:.1f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{frac:.2f}</text>'
        )
    parts.append(
        f'<text x="{_ML + plot_w / 2:.1f}" y="{_HEIGHT - 12}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">{_esc(x_label)}</text>'
    )
    parts.append(
        f'<text x="18" y="{_MT + plot_h / 2:.1f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12" '
        f'transform="rotate(-90 18 {_MT + plot_h / 2:.1f})">{_esc(y_label)}</text>'
    )
    for i, (label, xs, fs) in enumerate(curves):
        color = _PALETTE[i % len(_PALETTE)]
        points = " ".join(f"{sx(x):.2f},{sy(f):.2f}" for x, f in zip(xs, fs))
        parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{points}"/>'
        )
        ly = _MT + 14 + 18 * i
        parts.append(
            f'<line x1="{_WIDTH - _MR + 10}" y1="{ly - 4}" x2="{_WIDTH - _MR + 34}" '
            f'y2="{ly - 4}" stroke="{color}" stroke-width="2"/>'
        )
        parts.append(
            f'<text x="{_WIDTH - _MR + 40}" y="{ly}" font-family="sans-serif" '
            f'font-size="11">{_esc(label)}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
