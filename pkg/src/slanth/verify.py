"""Named desk-scale verification suites.

Each check pins its own windows and tolerances and returns (passed, detail).
The CLI `verify` command runs them by name or all together; the test suite
asserts them one by one. Checks are deterministic: fixed corpora, fixed
iteration orders, fixed windows.
"""

import numpy as np

from .analysis import (
    CORPUS,
    coisometry_defect,
    column_norm_floor,
    frobenius_of_section,
    isometry_sum_check,
    min_hyponormal_defect,
    norm_bound_check,
    partial_isometry_identity,
    self_adjoint_distance,
    slant_hankel_perp_check,
)
from .families import (
    COMPOSITIONAL_KINDS,
    SLANT_HANKEL,
    SLANT_H_TOEPLITZ,
    SLANT_TOEPLITZ,
    build_compositional,
    build_family,
    entry,
    extension,
    oracle_deviation,
)
from .structure import (
    check_characterization,
    check_extension_conditions,
    check_slant_h_matrix,
)
from .symbol import LaurentSymbol
from .windowed import IndexWindow, WindowedMatrix

__all__ = ["CHECKS", "run", "perturbed"]

_NONZERO = [(label, phi) for label, phi in CORPUS if not phi.is_zero]
_GENERIC = dict(CORPUS)["2z^-1+3+5z+7z^2"]

# Leading blocks of the slant-h section and its depth-1/2 continuations,
# written as coefficient degree grids: block[r][c] is the degree whose
# coefficient sits at that position.
GOLDEN_MAIN = [
    [0, 1, -1, 2, -2, 3, -3],
    [2, 3, 1, 4, 0, 5, -1],
    [4, 5, 3, 6, 2, 7, 1],
    [6, 7, 5, 8, 4, 9, 3],
    [8, 9, 7, 10, 6, 11, 5],
]
GOLDEN_DEPTH1 = [
    [-2, -1, -3, 0, -4, 1, -5],
    [0, 1, -1, 2, -2, 3, -3],
    [2, 3, 1, 4, 0, 5, -1],
    [4, 5, 3, 6, 2, 7, 1],
    [6, 7, 5, 8, 4, 9, 3],
    [8, 9, 7, 10, 6, 11, 5],
    [10, 11, 9, 12, 8, 13, 7],
]
GOLDEN_DEPTH2 = [
    [-4, -3, -5, -2, -6, -1, -7],
    [-2, -1, -3, 0, -4, 1, -5],
    [0, 1, -1, 2, -2, 3, -3],
    [2, 3, 1, 4, 0, 5, -1],
    [4, 5, 3, 6, 2, 7, 1],
    [6, 7, 5, 8, 4, 9, 3],
    [8, 9, 7, 10, 6, 11, 5],
    [10, 11, 9, 12, 8, 13, 7],
]


def perturbed(m: WindowedMatrix, i: int, j: int, delta=1.0) -> WindowedMatrix:
    """Copy of a section with one entry shifted by delta."""
    data = np.array(m.data)
    data[i - m.rows.lo, j - m.cols.lo] += delta
    return WindowedMatrix(m.rows, m.cols, data, m.exact)


def check_oracle():
    """Closed forms agree with the compositional builder for every corpus symbol."""
    cols = IndexWindow(0, 33)
    worst = 0.0
    combos = 0
    for _, phi in CORPUS:
        for kind in COMPOSITIONAL_KINDS:
            oracle = build_compositional(kind, phi, cols)
            rows = oracle.rows.hull(IndexWindow(0, 8))
            primary = build_family(kind, phi, rows, cols)
            worst = max(worst, oracle_deviation(primary, oracle))
            combos += 1
    return worst <= 1e-13, f"max_dev={worst!r} combos={combos}"


def check_golden():
    """Leading blocks match the displayed degree grids index for index."""
    # injective coefficients so a matching value pins the degree
    probe = LaurentSymbol({n: complex(n, 1) for n in range(-7, 14)})
    blocks = [
        (SLANT_H_TOEPLITZ, IndexWindow(0, 4), GOLDEN_MAIN),
        (extension(1), IndexWindow(-1, 5), GOLDEN_DEPTH1),
        (extension(2), IndexWindow(-2, 5), GOLDEN_DEPTH2),
    ]
    for kind, rows, grid in blocks:
        for r, i in enumerate(rows.indices()):
            for j in range(7):
                if entry(kind, probe, i, j) != probe.coeff(grid[r][j]):
                    return False, f"mismatch at kind={kind.name} ({i},{j})"
    return True, "blocks=3"


def check_roundtrip():
    """Symbol -> section -> symbol is the identity for supports within reach."""
    wide = LaurentSymbol({n: complex(1, n) for n in range(-16, 17)})
    candidates = [phi for _, phi in CORPUS] + [wide]
    rows, cols = IndexWindow(0, 8), IndexWindow(0, 33)
    from .structure import extract_symbol

    for phi in candidates:
        recovered = extract_symbol(build_family(SLANT_H_TOEPLITZ, phi, rows, cols))
        if recovered != phi:
            return False, f"roundtrip failed for {phi!r}"
    return True, f"symbols={len(candidates)}"


def check_predicates():
    """Sections pass both the pattern predicate and the shift identities;
    unit perturbations are caught by both with witnesses."""
    rows, cols = IndexWindow(0, 10), IndexWindow(0, 39)
    dom = IndexWindow(0, 8)
    worst = 0.0
    for _, phi in CORPUS:
        section = build_family(SLANT_H_TOEPLITZ, phi, rows, cols)
        pattern = check_slant_h_matrix(section, 1e-12)
        identities = check_characterization(section, dom, 1e-12)
        if not (pattern.passed and identities.passed):
            return False, f"clean section rejected for {phi!r}"
        worst = max(worst, pattern.max_residual, identities.max_residual)
    section = build_family(SLANT_H_TOEPLITZ, _GENERIC, rows, cols)
    for spot in ((0, 0), (1, 4)):
        bad = perturbed(section, *spot)
        pattern = check_slant_h_matrix(bad, 1e-12)
        identities = check_characterization(bad, dom, 1e-12)
        if pattern.passed or not pattern.witnesses:
            return False, f"pattern check missed perturbation at {spot}"
        if identities.passed or not identities.witnesses:
            return False, f"identity check missed perturbation at {spot}"
    return True, f"max_residual={worst!r}"


def check_interleaving():
    """Even/odd columns interleave the slant-toeplitz and slant-hankel sections."""
    rows = IndexWindow(0, 16)
    v_cols, half_cols = IndexWindow(0, 33), IndexWindow(0, 16)
    for _, phi in CORPUS:
        v = build_family(SLANT_H_TOEPLITZ, phi, rows, v_cols)
        b = build_family(SLANT_TOEPLITZ, phi, rows, half_cols)
        l = build_family(SLANT_HANKEL, phi, rows, half_cols)
        for n in half_cols.indices():
            if not np.array_equal(v.data[:, 2 * n], b.data[:, n]):
                return False, f"even column {2 * n} mismatch for {phi!r}"
            if 2 * n + 1 <= v_cols.hi and not np.array_equal(v.data[:, 2 * n + 1], l.data[:, n]):
                return False, f"odd column {2 * n + 1} mismatch for {phi!r}"
    return True, f"symbols={len(CORPUS)}"


def check_coisometry():
    """Coisometry family: defect, coefficient sum, and partial-isometry residual."""
    labels = {"1", "z", "z^3", "(1+z)/sqrt2"}
    worst = 0.0
    for label, phi in CORPUS:
        if label not in labels:
            continue
        defect = coisometry_defect(phi, 16)
        sums = isometry_sum_check(phi)
        partial = partial_isometry_identity(phi, IndexWindow(0, 12))
        worst = max(worst, defect.value, sums.value, partial.value)
        if defect.value > 1e-12 or sums.value > 1e-12 or partial.value > 1e-12:
            return False, f"residual {max(defect.value, sums.value, partial.value)!r} for {label}"
    return True, f"max_residual={worst!r}"


def check_negatives():
    """Every nonzero corpus symbol yields the expected quantitative violations."""
    square = IndexWindow(0, 16)
    for label, phi in _NONZERO:
        if min_hyponormal_defect(phi) >= -1e-12:
            return False, f"no hyponormality violation for {label}"
        if self_adjoint_distance(phi, square, square) <= 1e-6:
            return False, f"no self-adjointness violation for {label}"
        slant = build_family(SLANT_TOEPLITZ, phi, IndexWindow(0, 8), IndexWindow(0, 33))
        report = check_slant_h_matrix(slant, 1e-12)
        if report.passed or not report.witnesses:
            return False, f"slant-toeplitz section passed the slant-h pattern for {label}"
        growth = [
            frobenius_of_section(phi, IndexWindow(0, n - 1), IndexWindow(0, 4 * n))
            for n in (8, 16, 32)
        ]
        if growth[1] - growth[0] < 0.5 or growth[2] - growth[1] < 0.5:
            return False, f"frobenius growth stalled for {label}: {growth}"
        largest = max(abs(a) for _, a in phi.items())
        if column_norm_floor(phi) < largest - 1e-12:
            return False, f"column norms decayed for {label}"
    return True, f"symbols={len(_NONZERO)}"


def check_perp():
    """Slant-hankel membership conditions: one passing and one failing symbol."""
    good = dict(CORPUS)["z^-1+z^2"]
    report = slant_hankel_perp_check(good, 16)
    if not report.passed:
        return False, "z^-1+z^2 unexpectedly failed"
    bad = dict(CORPUS)["z^3"]
    report = slant_hankel_perp_check(bad, 16)
    relations = {w.relation for w in report.witnesses}
    if report.passed or "a[2j+4]=a[2j+3]" not in relations:
        return False, "z^3 did not fail on the step relation"
    if "a[n]=0(n=1|n>=3)" not in relations:
        return False, "z^3 did not fail membership"
    return True, "cases=2"


def check_norm_bound():
    """Section spectral norms stay below the symbol sup norm."""
    rows, cols = IndexWindow(0, 32), IndexWindow(0, 129)
    worst = -float("inf")
    for label, phi in CORPUS:
        summary = norm_bound_check(phi, rows, cols)
        worst = max(worst, summary.value)
        if summary.value > 1e-6:
            return False, f"norm bound violated for {label}: {summary.value!r}"
    return True, f"max_margin={worst!r}"


def check_extension():
    """Extension identities hold and entries are depth-independent."""
    a = build_family(SLANT_H_TOEPLITZ, _GENERIC, IndexWindow(0, 16), IndexWindow(0, 67))
    worst = 0.0
    for depth in (0, 1, 2):
        report = check_extension_conditions(a, depth, 1e-12)
        worst = max(worst, report.max_residual)
        if not report.passed:
            return False, f"identities failed at depth {depth}"
    for i in range(-3, 9):
        for j in range(0, 21):
            values = {
                entry(extension(depth), _GENERIC, i, j)
                for depth in range(0, 4)
                if i >= -depth
            }
            if len(values) > 1:
                return False, f"depth-dependent entry at ({i},{j})"
    return True, f"max_residual={worst!r}"


CHECKS = [
    ("oracle", check_oracle),
    ("golden", check_golden),
    ("roundtrip", check_roundtrip),
    ("predicates", check_predicates),
    ("interleaving", check_interleaving),
    ("coisometry", check_coisometry),
    ("negatives", check_negatives),
    ("perp", check_perp),
    ("norm-bound", check_norm_bound),
    ("extension", check_extension),
]


def run(names=None, out=None) -> int:
    """Run the named checks (all when names is falsy); 0 iff everything passed."""
    import sys

    out = out or sys.stdout
    table = dict(CHECKS)
    selected = list(names) if names else [name for name, _ in CHECKS]
    failures = 0
    for name in selected:
        if name not in table:
            raise ValueError(f"unknown check {name!r}; known: {', '.join(table)}")
        ok, detail = table[name]()
        out.write(f"{'PASS' if ok else 'FAIL'} {name} {detail}\n")
        failures += 0 if ok else 1
    return 0 if failures == 0 else 1
