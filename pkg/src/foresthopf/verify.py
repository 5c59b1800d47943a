"""Conformance suite: every algebraic law as a named, reproducible check.

Each ``check_*`` function exhaustively drives one identity over all forests
(or pairs/triples) up to the configured weight and returns a
:class:`CheckReport` with an instance count and concrete counterexamples.
Drivers ascend by weight, so the first recorded failure is always a
minimal-weight witness.  Checks are pure: rerunning a configuration yields
the identical report.

The coproduct and antipode enter every check through a :class:`Backend` of
counter-valued callables.  The default backend is the library itself;
substituting a deliberately corrupted backend is how the test suite proves
the checks can actually fail (mutation sensitivity).

Identities involving the antipode exist only at parameter value 0; those
checks accept a symbolic-mode configuration (they simply work at 0) but
reject a specialization list that excludes 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from . import algebra, kernels
from .algebra import (
    GradedCounter,
    antipode_counts,
    antipode_counts_recursive,
    delta_counts,
    n_count,
    phi_lambda,
    product,
    star,
)
from .forests import (
    DecorationRegistry,
    EMPTY_FOREST,
    Forest,
    ForestHopfError,
    _forest_from_key,
    concat,
    enumerate_forests,
    graft,
)

__all__ = [
    "Backend",
    "DEFAULT_BACKEND",
    "CheckFailure",
    "CheckReport",
    "CheckConfigError",
    "SuiteConfig",
    "ALL_CHECKS",
    "check_cocycle",
    "check_coassoc",
    "check_counit",
    "check_mult_compat",
    "check_cocommutative",
    "check_antipode",
    "check_s_squared",
    "check_takeuchi_vs_recursive",
    "check_rota_baxter",
    "check_duality",
    "check_phi",
    "check_coideal",
    "run_suite",
]

_MAX_FAILURES = 5  # per check; instances keep counting past the cap
_CLIP = 240


class CheckConfigError(ForestHopfError, ValueError):
    """A suite configuration violates a guard (weight cap, unknown check...)."""


@dataclass(frozen=True)
class Backend:
    """The two computational routes every check consumes.

    ``delta`` maps a forest to its graded coproduct counter
    ``{(left key, right key, power): int}``; ``antipode`` maps a forest to
    its undeformed antipode counter ``{forest key: int}``.
    """

    delta: Callable[[Forest], GradedCounter]
    antipode: Callable[[Forest], dict]


DEFAULT_BACKEND = Backend(delta=delta_counts, antipode=antipode_counts)


@dataclass(frozen=True)
class CheckFailure:
    input: str
    lhs: str
    rhs: str
    weight: int

    def to_json_obj(self) -> dict:
        return {
            "input": self.input,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "weight": self.weight,
        }


@dataclass
class CheckReport:
    check_name: str
    instances_run: int = 0
    failures: list[CheckFailure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json_obj(self) -> dict:
        return {
            "check": self.check_name,
            "instances": self.instances_run,
            "failures": [f.to_json_obj() for f in self.failures],
        }


@dataclass(frozen=True)
class SuiteConfig:
    """What to check, over which alphabets, how far, and at which parameter.

    ``lambda_mode`` is the string ``"symbolic"`` (exact polynomial
    comparison) or a tuple of integer specializations.  ``max_weight`` is
    capped at 6: beyond that the exhaustive drivers stop being desk-scale.
    Heavier checks derive tighter internal bounds from ``max_weight`` (pair
    drivers cap factors at 3, duality at (2, 2, 4), the rescaling morphism
    at 3).
    """

    registry: DecorationRegistry
    max_weight: int = 4
    lambda_mode: str | tuple[int, ...] = "symbolic"
    checks: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not 0 <= self.max_weight <= 6:
            raise CheckConfigError(
                f"max_weight must be between 0 and 6, got {self.max_weight}"
            )
        if self.lambda_mode != "symbolic":
            if not isinstance(self.lambda_mode, tuple) or not all(
                isinstance(v, int) for v in self.lambda_mode
            ):
                raise CheckConfigError(
                    "lambda_mode must be 'symbolic' or a tuple of integers"
                )
            if not self.lambda_mode:
                raise CheckConfigError("specialization list must not be empty")
        for name in self.checks:
            if name not in ALL_CHECKS:
                raise CheckConfigError(
                    f"unknown check {name!r}; known: {', '.join(ALL_CHECKS)}"
                )

    @property
    def selected(self) -> tuple[str, ...]:
        return self.checks if self.checks else tuple(ALL_CHECKS)

    @property
    def symbolic(self) -> bool:
        return self.lambda_mode == "symbolic"


# ---------------------------------------------------------------------------
# Shared driver machinery
# ---------------------------------------------------------------------------


def _forests_by_weight(cfg: SuiteConfig, max_weight: int) -> Iterator[Forest]:
    for w in range(max_weight + 1):
        yield from enumerate_forests(w, cfg.registry)


def _pairs_by_weight(
    cfg: SuiteConfig, total: int, each: int | None = None
) -> Iterator[tuple[Forest, Forest]]:
    cap = total if each is None else min(total, 2 * each)
    for t in range(cap + 1):
        for wf in range(t + 1):
            wg = t - wf
            if each is not None and (wf > each or wg > each):
                continue
            for f in enumerate_forests(wf, cfg.registry):
                for g in enumerate_forests(wg, cfg.registry):
                    yield f, g


def _project(counter: dict, value: int) -> dict:
    """Collapse the power component of graded keys at an integer parameter."""
    out: dict = {}
    for k, c in counter.items():
        base, p = k[:-1], k[-1]
        s = out.get(base, 0) + c * value**p
        if s:
            out[base] = s
        elif base in out:
            del out[base]
    return out


def _graded_equal(lhs: dict, rhs: dict, cfg: SuiteConfig) -> bool:
    if cfg.symbolic:
        return lhs == rhs
    return all(
        _project(lhs, v) == _project(rhs, v) for v in cfg.lambda_mode  # type: ignore[union-attr]
    )


def _clip(s: str) -> str:
    return s if len(s) <= _CLIP else s[: _CLIP - 1] + "…"


def _render_graded(counter: dict) -> str:
    """Render a 2- or 3-factor graded counter for failure reports."""
    if not counter:
        return "0"
    sample = next(iter(counter))
    if len(sample) == 3:
        return _clip(algebra._counter_to_tensor(counter).text())
    parts = []
    from .poly import PolyLambda

    keys = sorted(
        counter, key=lambda k: tuple(_forest_from_key(b).sort_key for b in k[:-1])
    )
    for k in keys:
        c = counter[k]
        body = "⊗".join(_forest_from_key(b).text for b in k[:-1])
        poly = PolyLambda.monomial(k[-1], c)
        sign, prefix = algebra._format_coefficient(poly)
        parts.append(
            (prefix + body if sign == "+" else f"-{prefix}{body}")
            if not parts
            else f" {sign} {prefix}{body}"
        )
    return _clip("".join(parts))


def _render_flat(counter: dict) -> str:
    return _clip(str(algebra._flat_to_lincomb(counter)))


class _Recorder:
    """Accumulates a report, keeping at most ``_MAX_FAILURES`` witnesses."""

    def __init__(self, name: str):
        self.report = CheckReport(check_name=name)

    def instance(self) -> None:
        self.report.instances_run += 1

    def fail(self, input_desc: str, lhs: str, rhs: str, weight: int) -> None:
        if len(self.report.failures) < _MAX_FAILURES:
            self.report.failures.append(
                CheckFailure(_clip(input_desc), lhs, rhs, weight)
            )


def _require_zero_available(cfg: SuiteConfig) -> None:
    if not cfg.symbolic and 0 not in cfg.lambda_mode:  # type: ignore[operator]
        raise CheckConfigError("Hopf checks require λ=0")


def _delta0(backend: Backend, f: Forest) -> dict:
    """Undeformed part of the coproduct counter: ``{(left, right): int}``."""
    return {
        (l, r): c for (l, r, p), c in backend.delta(f).items() if p == 0
    }


# ---------------------------------------------------------------------------
# Coproduct-side checks
# ---------------------------------------------------------------------------


def check_cocycle(cfg: SuiteConfig, backend: Backend = DEFAULT_BACKEND) -> CheckReport:
    """Grafting is a symmetric one-cocycle for the coproduct.

    For every forest ``F`` (weight < max) and operator decoration ``ω``:
    ``Δ(B⁺_ω F) = (B⁺_ω ⊗ id)Δ(F) + (id ⊗ B⁺_ω)Δ(F)``.
    """
    rec = _Recorder("cocycle")
    _drive_cocycle(cfg, backend, rec)
    return rec.report


def _drive_cocycle(cfg: SuiteConfig, backend: Backend, rec: _Recorder) -> None:
    for f in _forests_by_weight(cfg, cfg.max_weight - 1):
        for omega in cfg.registry.omega:
            grafted = graft(omega, f).as_forest()
            lhs = backend.delta(grafted)
            rhs: GradedCounter = {}
            for (l, r, p), c in backend.delta(f).items():
                for k2 in (
                    (algebra._graft_key(omega, l), r, p),
                    (l, algebra._graft_key(omega, r), p),
                ):
                    s = rhs.get(k2, 0) + c
                    if s:
                        rhs[k2] = s
                    elif k2 in rhs:
                        del rhs[k2]
            rec.instance()
            if not _graded_equal(lhs, rhs, cfg):
                rec.fail(
                    f"F = {f.text}, ω = {omega.name}",
                    _render_graded(lhs),
                    _render_graded(rhs),
                    grafted.weight,
                )


def check_coassoc(cfg: SuiteConfig, backend: Backend = DEFAULT_BACKEND) -> CheckReport:
    """``(Δ ⊗ id)Δ = (id ⊗ Δ)Δ`` on every forest up to the weight cap."""
    rec = _Recorder("coassoc")
    for f in _forests_by_weight(cfg, cfg.max_weight):
        t = backend.delta(f)
        memo_left = {
            l: backend.delta(_forest_from_key(l)) for (l, _, _) in t
        }
        memo_right = {
            r: backend.delta(_forest_from_key(r)) for (_, r, _) in t
        }
        lhs = kernels.expand_left(t, memo_left)
        rhs = kernels.expand_right(t, memo_right)
        rec.instance()
        if not _graded_equal(lhs, rhs, cfg):
            rec.fail(
                f"F = {f.text}", _render_graded(lhs), _render_graded(rhs), f.weight
            )
    return rec.report


def check_counit(cfg: SuiteConfig, backend: Backend = DEFAULT_BACKEND) -> CheckReport:
    """``(ε ⊗ id)Δ = id = (id ⊗ ε)Δ`` on every forest up to the weight cap."""
    rec = _Recorder("counit")
    for f in _forests_by_weight(cfg, cfg.max_weight):
        t = backend.delta(f)
        left = {(r, p): c for (l, r, p), c in t.items() if not l}
        right = {(l, p): c for (l, r, p), c in t.items() if not r}
        expect = {(f.key, 0): 1}
        rec.instance()
        if not _graded_equal(left, expect, cfg) or not _graded_equal(
            right, expect, cfg
        ):
            rec.fail(
                f"F = {f.text}",
                f"(ε⊗id)Δ: {_render_graded({(b'', k, p): c for (k, p), c in left.items()})}",
                f"(id⊗ε)Δ: {_render_graded({(k, b'', p): c for (k, p), c in right.items()})}",
                f.weight,
            )
    return rec.report


def check_mult_compat(
    cfg: SuiteConfig, backend: Backend = DEFAULT_BACKEND
) -> CheckReport:
    """``Δ(FG) = Δ(F)Δ(G)`` over ordered pairs with total weight ≤ max + 1."""
    rec = _Recorder("mult_compat")
    for f, g in _pairs_by_weight(cfg, cfg.max_weight + 1):
        lhs = backend.delta(concat(f, g))
        rhs = kernels.graded_mul(backend.delta(f), backend.delta(g))
        rec.instance()
        if not _graded_equal(lhs, rhs, cfg):
            rec.fail(
                f"F = {f.text}, G = {g.text}",
                _render_graded(lhs),
                _render_graded(rhs),
                f.weight + g.weight,
            )
    return rec.report


def check_cocommutative(
    cfg: SuiteConfig, backend: Backend = DEFAULT_BACKEND
) -> CheckReport:
    """The coproduct is invariant under swapping the tensor factors."""
    rec = _Recorder("cocommutative")
    for f in _forests_by_weight(cfg, cfg.max_weight):
        t = backend.delta(f)
        flipped = {(r, l, p): c for (l, r, p), c in t.items()}
        rec.instance()
        if not _graded_equal(t, flipped, cfg):
            rec.fail(
                f"F = {f.text}", _render_graded(t), _render_graded(flipped), f.weight
            )
    return rec.report


# ---------------------------------------------------------------------------
# Antipode-side checks (parameter 0)
# ---------------------------------------------------------------------------


def check_antipode(cfg: SuiteConfig, backend: Backend = DEFAULT_BACKEND) -> CheckReport:
    """Antipode axiom: ``m(S ⊗ id)Δ = u∘ε = m(id ⊗ S)Δ`` at parameter 0."""
    _require_zero_available(cfg)
    rec = _Recorder("antipode")
    for f in _forests_by_weight(cfg, cfg.max_weight):
        expect = {b"": 1} if f.is_empty else {}
        left: dict = {}
        right: dict = {}
        for (l, r), c in _delta0(backend, f).items():
            kernels.dict_axpy(
                left, {sk + r: sc for sk, sc in backend.antipode(_forest_from_key(l)).items()}, c
            )
            kernels.dict_axpy(
                right, {l + sk: sc for sk, sc in backend.antipode(_forest_from_key(r)).items()}, c
            )
        rec.instance()
        if left != expect or right != expect:
            rec.fail(
                f"F = {f.text}",
                f"m(S⊗id)Δ: {_render_flat(left)}",
                f"m(id⊗S)Δ: {_render_flat(right)} (want {_render_flat(expect)})",
                f.weight,
            )
    return rec.report


def check_s_squared(
    cfg: SuiteConfig, backend: Backend = DEFAULT_BACKEND
) -> CheckReport:
    """``S∘S = id`` — the antipode is an involution here (cocommutativity)."""
    _require_zero_available(cfg)
    rec = _Recorder("s_squared")
    for f in _forests_by_weight(cfg, cfg.max_weight):
        acc: dict = {}
        for k, c in backend.antipode(f).items():
            kernels.dict_axpy(acc, backend.antipode(_forest_from_key(k)), c)
        rec.instance()
        if acc != {f.key: 1}:
            rec.fail(f"F = {f.text}", _render_flat(acc), f.text, f.weight)
    return rec.report


def check_takeuchi_vs_recursive(
    cfg: SuiteConfig, backend: Backend = DEFAULT_BACKEND
) -> CheckReport:
    """The closed antipode formula agrees with the convolution recursion."""
    _require_zero_available(cfg)
    rec = _Recorder("takeuchi_vs_recursive")
    for f in _forests_by_weight(cfg, cfg.max_weight):
        lhs = backend.antipode(f)
        rhs = antipode_counts_recursive(f)
        rec.instance()
        if lhs != rhs:
            rec.fail(f"F = {f.text}", _render_flat(lhs), _render_flat(rhs), f.weight)
    return rec.report


def check_rota_baxter(
    cfg: SuiteConfig, backend: Backend = DEFAULT_BACKEND
) -> CheckReport:
    """``S(a)S(b) = S(a₁ S(a₂) b S(S(a₃)))`` over pairs of basis forests.

    The Sweedler triple runs over the twice-iterated undeformed coproduct;
    factor weights are capped at min(3, max_weight).
    """
    _require_zero_available(cfg)
    rec = _Recorder("rota_baxter")
    cap = min(3, cfg.max_weight)

    def s_of_key(k: bytes) -> dict:
        return backend.antipode(_forest_from_key(k))

    ss_cache: dict[bytes, dict] = {}

    def ss_of_key(k: bytes) -> dict:
        got = ss_cache.get(k)
        if got is None:
            got = {}
            for k2, c2 in s_of_key(k).items():
                kernels.dict_axpy(got, s_of_key(k2), c2)
            ss_cache[k] = got
        return got

    bodies: list[tuple[Forest, dict]] = []
    for a in _forests_by_weight(cfg, cap):
        # Sweedler triples of a, then collapse a₁·S(a₂) and S(S(a₃)) into
        # (prefix, suffix) -> coefficient, so each pair below is cheap.
        triples: dict = {}
        for (k1, rest), c in _delta0(backend, a).items():
            for (k2, k3), c2 in _delta0(backend, _forest_from_key(rest)).items():
                key = (k1, k2, k3)
                triples[key] = triples.get(key, 0) + c * c2
        body: dict = {}
        for (k1, k2, k3), c in triples.items():
            for sk2, c_s in s_of_key(k2).items():
                prefix = k1 + sk2
                for sk3, c_ss in ss_of_key(k3).items():
                    cell = (prefix, sk3)
                    s = body.get(cell, 0) + c * c_s * c_ss
                    if s:
                        body[cell] = s
                    elif cell in body:
                        del body[cell]
        bodies.append((a, body))

    for a, body in bodies:
        sa = backend.antipode(a)
        for b in _forests_by_weight(cfg, cap):
            lhs: dict = {}
            sb = backend.antipode(b)
            for ka, ca in sa.items():
                for kb, cb in sb.items():
                    k = ka + kb
                    s = lhs.get(k, 0) + ca * cb
                    if s:
                        lhs[k] = s
                    elif k in lhs:
                        del lhs[k]
            arg: dict = {}
            for (prefix, suffix), c in body.items():
                k = prefix + b.key + suffix
                s = arg.get(k, 0) + c
                if s:
                    arg[k] = s
                elif k in arg:
                    del arg[k]
            rhs: dict = {}
            for k, c in arg.items():
                kernels.dict_axpy(rhs, s_of_key(k), c)
            rec.instance()
            if lhs != rhs:
                rec.fail(
                    f"a = {a.text}, b = {b.text}",
                    _render_flat(lhs),
                    _render_flat(rhs),
                    a.weight + b.weight,
                )
    return rec.report


def check_duality(cfg: SuiteConfig, backend: Backend = DEFAULT_BACKEND) -> CheckReport:
    """``⟨F⋆G, H⟩ = N(F,G;H) = ⟨F⊗G, Δ(H)⟩`` at parameter 0.

    The three legs are computed by three unrelated routes: matrix
    completions, brute-force subset counting, and the coproduct counter.
    Factor weights are capped at min(2, max_weight) and the target at
    min(4, max_weight).
    """
    _require_zero_available(cfg)
    rec = _Recorder("duality")
    fg_cap = min(2, cfg.max_weight)
    h_cap = min(4, cfg.max_weight)
    small = list(_forests_by_weight(cfg, fg_cap))
    stars = {
        (f, g): star(f, g, cfg.registry) for f in small for g in small
    }
    for h in _forests_by_weight(cfg, h_cap):
        d0 = _delta0(backend, h)
        for f in small:
            for g in small:
                v_star = stars[(f, g)].coefficient(h).constant_term()
                v_count = n_count(f, g, h)
                v_delta = d0.get((f.key, g.key), 0)
                rec.instance()
                if not (v_star == v_count == v_delta):
                    rec.fail(
                        f"F = {f.text}, G = {g.text}, H = {h.text}",
                        f"⟨F⋆G,H⟩ = {v_star}",
                        f"N(F,G;H) = {v_count}, ⟨F⊗G,Δ(H)⟩ = {v_delta}",
                        h.weight,
                    )
    return rec.report


def check_phi(cfg: SuiteConfig, backend: Backend = DEFAULT_BACKEND) -> CheckReport:
    """The leaf-count rescaling intertwines the coproduct family.

    At integer points: ``Δ_{λμ}(φ_λ F) = (φ_λ ⊗ φ_λ)(Δ_μ F)``, and ``φ_λ``
    is multiplicative.  In symbolic mode the default grid {0, 1, 2, 3} is
    used — more points than the polynomial degree, so equality on the grid
    is equality of polynomials.
    """
    rec = _Recorder("phi")
    values = (0, 1, 2, 3) if cfg.symbolic else tuple(cfg.lambda_mode)  # type: ignore[arg-type]
    cap = min(3, cfg.max_weight)
    xc_cache: dict[bytes, int] = {}

    def xc(key: bytes) -> int:
        got = xc_cache.get(key)
        if got is None:
            got = _forest_from_key(key).x_count
            xc_cache[key] = got
        return got

    for f in _forests_by_weight(cfg, cap):
        t = backend.delta(f)
        for lam in values:
            scale = lam**f.x_count
            for mu in values:
                lhs = {
                    k: v * scale for k, v in _project(t, lam * mu).items() if v * scale
                }
                rhs: dict = {}
                for (l, r, p), c in t.items():
                    v = c * mu**p * lam ** (xc(l) + xc(r))
                    if not v:
                        continue
                    cell = (l, r)
                    s = rhs.get(cell, 0) + v
                    if s:
                        rhs[cell] = s
                    elif cell in rhs:
                        del rhs[cell]
                rec.instance()
                if lhs != rhs:
                    rec.fail(
                        f"F = {f.text}, λ = {lam}, μ = {mu}",
                        _render_graded({(l, r, 0): c for (l, r), c in lhs.items()}),
                        _render_graded({(l, r, 0): c for (l, r), c in rhs.items()}),
                        f.weight,
                    )
    for f, g in _pairs_by_weight(cfg, cap):
        for lam in values:
            lhs_lc = phi_lambda(product(f, g), lam)
            rhs_lc = product(phi_lambda(algebra.as_lincomb(f), lam), phi_lambda(algebra.as_lincomb(g), lam))
            rec.instance()
            if lhs_lc != rhs_lc:
                rec.fail(
                    f"F = {f.text}, G = {g.text}, λ = {lam}",
                    _clip(str(lhs_lc)),
                    _clip(str(rhs_lc)),
                    f.weight + g.weight,
                )
    return rec.report


def check_coideal(cfg: SuiteConfig, backend: Backend = DEFAULT_BACKEND) -> CheckReport:
    """Grafting images form an operated coideal.

    ``ε(B⁺_ω F) = 0`` for every forest and operator decoration, and every
    coproduct of a grafted forest splits through grafted factors — the
    cocycle identity certifies the membership
    ``Δ(B⁺_ω H) ⊆ B⁺_ω(H) ⊗ H + H ⊗ B⁺_ω(H)``.
    """
    rec = _Recorder("coideal")
    for f in _forests_by_weight(cfg, cfg.max_weight - 1):
        for omega in cfg.registry.omega:
            grafted = graft(omega, f).as_forest()
            eps = {
                p: c for (l, r, p), c in backend.delta(grafted).items() if not l and not r
            }
            rec.instance()
            if eps:
                rec.fail(
                    f"F = {f.text}, ω = {omega.name}",
                    f"ε(B⁺_ω F) has counter {eps}",
                    "0",
                    grafted.weight,
                )
    _drive_cocycle(cfg, backend, rec)
    return rec.report


ALL_CHECKS: dict[str, Callable[..., CheckReport]] = {
    "cocycle": check_cocycle,
    "coassoc": check_coassoc,
    "counit": check_counit,
    "mult_compat": check_mult_compat,
    "cocommutative": check_cocommutative,
    "antipode": check_antipode,
    "s_squared": check_s_squared,
    "takeuchi_vs_recursive": check_takeuchi_vs_recursive,
    "rota_baxter": check_rota_baxter,
    "duality": check_duality,
    "phi": check_phi,
    "coideal": check_coideal,
}


def run_suite(
    cfg: SuiteConfig, backend: Backend = DEFAULT_BACKEND
) -> list[CheckReport]:
    """Run the selected checks in canonical order and return their reports."""
    return [ALL_CHECKS[name](cfg, backend) for name in cfg.selected]
