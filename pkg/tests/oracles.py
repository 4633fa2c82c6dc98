"""Independent reference implementations used to pin expected values.

Everything here is written from the definitions, deliberately using a
different algorithm than the package: full candidate enumeration for
scanning, interval scans for tree bucketing, regex run-splitting for f,
polyfit normal equations for weighted least squares. Tests freeze these
outputs as the expected side of comparisons.
"""

from __future__ import annotations

import re

import numpy as np

_WORD = re.compile(r"\w+")


def oracle_tokens(text: str) -> list[tuple[str, int, int]]:
    return [(m.group().casefold(), m.start(), m.end()) for m in _WORD.finditer(text)]


def oracle_scan(text: str, patterns: list[tuple[str, str]]) -> list[tuple[str, int, str]]:
    """All (form, pos, matched_text) picked left-to-right, longest first.

    ``patterns`` holds (form signature, surface). Candidates are fully
    enumerated up front, then selected by a token-index sweep.
    """
    tokens = oracle_tokens(text)
    compiled = []
    seen = set()
    for sig, surface in patterns:
        toks = tuple(t.casefold() for t in _WORD.findall(surface))
        if toks and toks not in seen:
            seen.add(toks)
            compiled.append((sig, toks))

    candidates: dict[int, tuple[int, str]] = {}
    for sig, toks in compiled:
        k = len(toks)
        for i in range(len(tokens) - k + 1):
            if tuple(t[0] for t in tokens[i : i + k]) == toks:
                best = candidates.get(i)
                if best is None or k > best[0]:
                    candidates[i] = (k, sig)

    out = []
    i = 0
    while i < len(tokens):
        if i in candidates:
            k, sig = candidates[i]
            start = tokens[i][1]
            end = tokens[i + k - 1][2]
            out.append((sig, start, text[start:end]))
            i += k
        else:
            i += 1
    return out


def oracle_buckets(
    occs: list[tuple[int, bool]]
) -> tuple[list[int], list[tuple[int, list[int]]]]:
    """(cataphoric positions, [(full pos, child positions)]) by interval scan.

    ``occs`` holds (pos, is_full) pairs in any order.
    """
    fulls = sorted(p for p, is_full in occs if is_full)
    reds = sorted(p for p, is_full in occs if not is_full)
    if not fulls:
        return reds, []
    cata = [p for p in reds if p < fulls[0]]
    nodes = []
    for i, t in enumerate(fulls):
        upper = fulls[i + 1] if i + 1 < len(fulls) else None
        children = [p for p in reds if p > t and (upper is None or p < upper)]
        nodes.append((t, children))
    return cata, nodes


def oracle_metrics(occs: list[tuple[int, bool]]) -> dict:
    """The seven quantities recomputed from the flat list; None marks NA."""
    cata, nodes = oracle_buckets(occs)
    out: dict = {}
    if not nodes:
        return {
            "d_m": None,
            "d_minus": float(len(cata)),
            "f": None,
            "delta": None,
            "Delta": None,
            "delta_minus": None,
            "Delta_minus": None,
        }
    degrees = [len(children) for _, children in nodes]
    out["d_m"] = sum(degrees) / len(nodes)
    out["d_minus"] = float(len(cata))

    # encode the degree sequence and split runs with a regex
    encoded = "".join("+" if d > 0 else "0" for d in degrees)
    runs = [len(chunk) for chunk in re.findall(r"0*\+", encoded)]
    out["f"] = sum(runs) / len(runs) if runs else None

    firsts = [children[0] - t for t, children in nodes if children]
    lasts = [children[-1] - t for t, children in nodes if children]
    out["delta"] = sum(firsts) / len(firsts) if firsts else None
    out["Delta"] = sum(lasts) / len(lasts) if lasts else None

    t1 = nodes[0][0]
    out["delta_minus"] = float(t1 - max(cata)) if cata else None
    out["Delta_minus"] = float(t1 - min(cata)) if cata else None
    return out


def oracle_wls_fit(x, y, weights) -> np.ndarray:
    """Pointwise weighted-least-squares line fits via polyfit.

    weights[i] is the weight vector for the local fit at x[i]; the
    returned array holds the fitted value at each x[i].
    """
    x = np.asarray(x, float)
    y = np.asarray(y, float)
    fitted = np.empty(len(x))
    for i, w in enumerate(weights):
        coeffs = np.polyfit(x, y, 1, w=np.sqrt(np.asarray(w, float)))
        fitted[i] = np.polyval(coeffs, x[i])
    return fitted


def tricube_weights(x, fraction: float) -> list[np.ndarray]:
    """Neighborhood weights as the lowess definition states them."""
    x = np.asarray(x, float)
    n = len(x)
    r = int(np.ceil(fraction * n))
    out = []
    for i in range(n):
        dist = np.abs(x - x[i])
        h = np.sort(dist)[r - 1]
        if h == 0:
            out.append((dist == 0).astype(float))
        else:
            out.append((1 - np.clip(dist / h, 0, 1) ** 3) ** 3)
    return out


def oracle_subsets(n: int) -> list[tuple[int, ...]]:
    """All subsets of range(n) by bitmask enumeration."""
    subsets = []
    for mask in range(2**n):
        subsets.append(tuple(i for i in range(n) if mask & (1 << i)))
    return subsets
