"""SVG rendering of an augmented waveform.

Output is byte-identical for identical descriptor and dimensions: fixed
2-decimal coordinates, fixed element order (overall emoji, bars, ending
emoji, then optional segment emojis). Failed augmentations render gray
bars and no emoji glyphs.
"""

from __future__ import annotations

from .descriptor import AugmentationDescriptor, STATUS_DONE
from .emotion import BarColor
from .errors import InputError

_MARGIN = 6.0
_BAR_FILL_FRACTION = 0.62  # of the per-bar slot; the rest is gap


def _f(x: float) -> str:
    v = float(x)
    if v == 0.0:
        v = 0.0
    return f"{v:.2f}"


def _fill(color: BarColor | None) -> str:
    if color is None:
        return "hsl(0.00,0.00%,70.00%)"
    return f"hsl({_f(color.hue)},{_f(color.saturation)}%,{_f(color.lightness)}%)"


def render_svg(
    d: AugmentationDescriptor,
    width_px: float,
    height_px: float,
    show_segment_emojis: bool = False,
) -> str:
    if not (width_px > 0 and height_px > 0):
        raise InputError(f"dimensions must be positive, got {width_px}x{height_px}")

    w, h = float(width_px), float(height_px)
    with_emojis = d.status == STATUS_DONE
    emoji_size = round(h * 0.58, 2)
    gutter = emoji_size + _MARGIN
    x0 = _MARGIN + gutter
    area_w = max(1.0, w - 2.0 * (_MARGIN + gutter))
    mid_y = h / 2.0

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_f(w)}" height="{_f(h)}" '
        f'viewBox="0 0 {_f(w)} {_f(h)}" data-generated-by="ai">'
    ]

    if with_emojis:
        parts.append(
            f'<text class="speeji speeji-overall" data-generated-by="ai" '
            f'x="{_f(_MARGIN)}" y="{_f(mid_y + emoji_size * 0.35)}" '
            f'font-size="{_f(emoji_size)}">{d.overall_emoji.glyph}</text>'
        )

    n = len(d.bars)
    if n:
        slot = area_w / n
        bar_w = slot * _BAR_FILL_FRACTION
        max_h = h - 2.0 * _MARGIN
        rx = bar_w / 2.0
        for i, bar in enumerate(d.bars):
            bh = max(1.0, bar.height * max_h)
            x = x0 + i * slot + (slot - bar_w) / 2.0
            y = mid_y - bh / 2.0
            parts.append(
                f'<rect x="{_f(x)}" y="{_f(y)}" width="{_f(bar_w)}" height="{_f(bh)}" '
                f'rx="{_f(rx)}" fill="{_fill(bar.color)}"/>'
            )

    if with_emojis:
        parts.append(
            f'<text class="speeji speeji-ending" data-generated-by="ai" '
            f'x="{_f(w - _MARGIN - emoji_size)}" y="{_f(mid_y + emoji_size * 0.35)}" '
            f'font-size="{_f(emoji_size)}">{d.ending_emoji.glyph}</text>'
        )
        if show_segment_emojis and d.duration_s > 0:
            seg_size = round(emoji_size * 0.55, 2)
            for seg in d.interest_segments:
                mid_t = (seg.start_s + seg.end_s) / 2.0
                cx = x0 + (mid_t / d.duration_s) * area_w - seg_size / 2.0
                parts.append(
                    f'<text class="speeji speeji-segment" data-generated-by="ai" '
                    f'x="{_f(cx)}" y="{_f(_MARGIN + seg_size * 0.8)}" '
                    f'font-size="{_f(seg_size)}">{seg.emoji.glyph}</text>'
                )

    parts.append("</svg>")
    return "".join(parts)
