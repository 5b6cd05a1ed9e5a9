"""Figure-style image grids: labeled panels concatenated horizontally.

Labels are rendered with a built-in 3x5 bitmap font so the grids stay
dependency-free and byte-deterministic.
"""

import numpy as np

# 3x5 glyphs, rows top to bottom, '1' = ink
_FONT = {
    "A": ("010", "101", "111", "101", "101"),
    "B": ("110", "101", "110", "101", "110"),
    "C": ("011", "100", "100", "100", "011"),
    "D": ("110", "101", "101", "101", "110"),
    "E": ("111", "100", "110", "100", "111"),
    "F": ("111", "100", "110", "100", "100"),
    "G": ("011", "100", "101", "101", "011"),
    "H": ("101", "101", "111", "101", "101"),
    "I": ("111", "010", "010", "010", "111"),
    "J": ("001", "001", "001", "101", "010"),
    "K": ("101", "110", "100", "110", "101"),
    "L": ("100", "100", "100", "100", "111"),
    "M": ("101", "111", "101", "101", "101"),
    "N": ("110", "101", "101", "101", "101"),
    "O": ("010", "101", "101", "101", "010"),
    "P": ("110", "101", "110", "100", "100"),
    "Q": ("010", "101", "101", "110", "011"),
    "R": ("110", "101", "110", "110", "101"),
    "S": ("011", "100", "010", "001", "110"),
    "T": ("111", "010", "010", "010", "010"),
    "U": ("101", "101", "101", "101", "111"),
    "V": ("101", "101", "101", "101", "010"),
    "W": ("101", "101", "101", "111", "101"),
    "X": ("101", "101", "010", "101", "101"),
    "Y": ("101", "101", "010", "010", "010"),
    "Z": ("111", "001", "010", "100", "111"),
    "0": ("010", "101", "101", "101", "010"),
    "1": ("010", "110", "010", "010", "111"),
    "2": ("110", "001", "010", "100", "111"),
    "3": ("110", "001", "010", "001", "110"),
    "4": ("101", "101", "111", "001", "001"),
    "5": ("111", "100", "110", "001", "110"),
    "6": ("011", "100", "110", "101", "010"),
    "7": ("111", "001", "010", "010", "010"),
    "8": ("010", "101", "010", "101", "010"),
    "9": ("010", "101", "011", "001", "110"),
    "-": ("000", "000", "111", "000", "000"),
    ".": ("000", "000", "000", "000", "010"),
    "=": ("000", "111", "000", "111", "000"),
    " ": ("000", "000", "000", "000", "000"),
}


def render_label(text: str, width: int, scale: int = 2,
                 ink: float = 0.0, paper: float = 1.0) -> np.ndarray:
    """Label strip of the given pixel width (text truncated to fit)."""
    rows = np.zeros((7, max(width // scale, 1)))
    col = 1
    for ch in text.upper():
        glyph = _FONT.get(ch, _FONT[" "])
        if col + 3 >= rows.shape[1]:
            break
        for r, bits in enumerate(glyph):
            for c, bit in enumerate(bits):
                if bit == "1":
                    rows[1 + r, col + c] = 1.0
        col += 4
    strip = np.kron(rows, np.ones((scale, scale)))
    strip = strip[:, :width]
    if strip.shape[1] < width:
        strip = np.pad(strip, ((0, 0), (0, width - strip.shape[1])))
    return np.where(strip > 0, ink, paper)


def make_grid(panels, labels=None, sep: int = 2, sep_value: float = 1.0) -> np.ndarray:
    """Horizontally concatenate same-height panels with separator columns
    and an optional label strip above each panel."""
    panels = [np.asarray(p, dtype=np.float64) for p in panels]
    if not panels:
        raise ValueError("no panels to lay out")
    heights = {p.shape[0] for p in panels}
    if len(heights) != 1:
        raise ValueError("panels must share a height")
    if labels is not None and len(labels) != len(panels):
        raise ValueError("one label per panel required")
    columns = []
    for idx, p in enumerate(panels):
        if labels is not None:
            strip = render_label(labels[idx], p.shape[1])
            p = np.vstack([strip, p])
        columns.append(p)
        if idx != len(panels) - 1:
            columns.append(np.full((p.shape[0], sep), sep_value))
    return np.hstack(columns)
