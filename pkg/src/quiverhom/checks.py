"""
Named property suites, each a pure function of a seed.

A suite runs a fixed number of trials and returns a ``SuiteResult``; an
exception inside a trial is recorded as a failure of that trial, never
propagated.  ``SUITES`` maps the names accepted by ``quiverhom check``.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from pathlib import Path

from . import generators as gen
from .atspace import at_space, component_count, h_natural, sigma, sigma_naturality, split_analysis
from .chainrep import (antipodal_quotient_h0, basepoint_comparison, cycle_fixed_limit,
                       excision_check, homology, projection_report, rep_homology, rep_limit, rho,
                       rho_naturality, s_gamma, s_gamma_morphism, verify_homotopy)
from .formats import parse_input
from .intalg import FgAbGroup, IntMatrix, left_exactness_check
from .quiver import (Quiver, arrow_positive_function, fundamental_cycles, has_odd_oriented_cycle,
                     vertex_grading)
from .setrep import (SetMorphism, check_system_action, classify_morphism, from_system,
                     related_exact_check, to_system)
from .simplicial import SimplicialComplex, SimplicialMap, SimplicialRep

log = logging.getLogger(__name__)

FIXTURES = Path(__file__).parent / "fixtures"


@dataclass
class SuiteResult:
    name: str
    trials: int = 0
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> int:
        return self.trials - len(self.failures)

    @property
    def ok(self) -> bool:
        return self.trials > 0 and not self.failures

    def run(self, label, fn):
        """Run one trial; ``fn`` returns None on success or a failure message."""
        self.trials += 1
        try:
            msg = fn()
        except Exception as e:  # a crash inside a trial is a failed trial
            msg = f"{type(e).__name__}: {e}"
        if msg:
            log.info("%s: trial %s failed: %s", self.name, label, msg)
            self.failures.append(f"{label}: {msg}")

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "trials": self.trials, "passed": self.passed,
                "failures": self.failures[:10], "details": self.details}


def _iso(g: FgAbGroup, h: FgAbGroup) -> bool:
    return g.is_isomorphic(h)


# finite set representations


def system_roundtrip(seed: int = 0, trials: int = 200) -> SuiteResult:
    """Representation -> system -> representation is the identity, and back."""
    rng = random.Random(seed)
    res = SuiteResult("system-roundtrip")
    for t in range(trials):
        q = gen.random_quiver(rng, rng.randint(1, 5), rng.randint(0, 6))
        rep = gen.random_finset_rep(rng, q)

        def trial():
            sys = to_system(rep)
            if from_system(sys) != rep:
                return "rep -> system -> rep changed the representation"
            if to_system(from_system(sys)) != sys:
                return "system -> rep -> system changed the system"
            if not check_system_action(sys):
                return "system action is not compatible with path composition"
        res.run(t, trial)
    return res


def _big_target_morphism(rng, attempts: int = 100):
    for _ in range(attempts):
        q = gen.random_quiver(rng, rng.randint(1, 5), rng.randint(0, 6))
        h = gen.random_set_morphism(rng, gen.random_finset_rep(rng, q, 4, min_elems=1))
        if all(h.target.size(v) >= 2 for v in q.vertices):
            return h
    raise RuntimeError("no morphism with large enough target sets")


def empty_end_exactness(seed: int = 0, trials: int = 200) -> SuiteResult:
    """Exactness at an empty end detects monomorphisms and epimorphisms."""
    rng = random.Random(seed)
    res = SuiteResult("empty-end-exactness")
    counts = {"mono": 0, "not_mono": 0, "epi": 0, "not_epi": 0}
    for t in range(trials):
        q = gen.random_quiver(rng, rng.randint(1, 5), rng.randint(0, 6))
        h = gen.random_set_morphism(rng, gen.random_finset_rep(rng, q))
        h2 = _big_target_morphism(rng)

        def trial():
            mono = classify_morphism(h).mono
            counts["mono" if mono else "not_mono"] += 1
            if related_exact_check(SetMorphism.from_empty(h.source), h).exact != mono:
                return f"exactness of 0 -> T -> T' disagrees with mono={mono}"
            epi = classify_morphism(h2).epi
            counts["epi" if epi else "not_epi"] += 1
            if related_exact_check(h2, SetMorphism.to_empty(h2.target)).exact != epi:
                return f"exactness of T -> T' -> 0 disagrees with epi={epi}"
        res.run(t, trial)
    res.details["branches"] = counts
    return res


# gradings


def grading_criterion(seed: int = 0, trials: int = 200) -> SuiteResult:
    """An arrow function exists exactly when every fundamental cycle is balanced."""
    rng = random.Random(seed)
    res = SuiteResult("grading-criterion")
    graded = 0
    for t in range(trials):
        n = rng.randint(1, 8)
        q = gen.random_quiver(rng, n, rng.randint(n - 1, min(12, n + 3)), connected=True)
        rep = gen.random_finset_rep(rng, q, 3)

        def trial():
            nonlocal graded
            F = arrow_positive_function(q)
            balanced = all(c.symmetric for c in fundamental_cycles(q))
            if (F is not None) != balanced:
                return f"arrow function {'found' if F else 'missing'} but balanced={balanced}"
            if F is None:
                return None
            graded += 1
            if not F.is_valid_for(q) or min(F.values.values()) != 0:
                return "arrow function is not canonical"
            for root in q.vertices:
                if arrow_positive_function(q, root) != F:
                    return f"arrow function depends on the search root {root}"
            vertex_grading(rep, F)
        res.run(t, trial)
    res.details["graded"] = graded
    return res


# homology of representations


def _point() -> SimplicialComplex:
    return SimplicialComplex.from_facets([(0,)])


def _groups(crep, top: int) -> list:
    lim = rep_limit(crep)
    return [homology(lim.complex, n).group for n in range(top + 1)]


def point_homology(seed: int = 0, trials: int = 50) -> SuiteResult:
    """A point at every vertex of a connected quiver has the homology of a point."""
    rng = random.Random(seed)
    res = SuiteResult("point-homology")
    for t in range(trials):
        n = rng.randint(1, 6)
        q = gen.random_quiver(rng, n, rng.randint(n - 1, 9), connected=True)

        def trial():
            hs = _groups(s_gamma(gen.constant_rep(q, _point())), 2)
            if [str(g) for g in hs] != ["Z", "0", "0"]:
                return f"homology {[str(g) for g in hs]}"
        res.run(t, trial)
    return res


def line_of_isomorphisms(seed: int = 0, trials: int = 20) -> SuiteResult:
    """Hexagons joined by isomorphisms along a line: the limit is one hexagon."""
    rng = random.Random(seed)
    res = SuiteResult("line-of-isomorphisms")
    hexa = gen.polygon(6)
    for t in range(trials):
        length = t % 5 + 1
        q = Quiver.from_edges(range(1, length + 2), [(f"a{i}", i, i + 1) for i in range(1, length + 1)])
        maps = {a.id: gen.polygon_map(hexa, hexa, rng.randrange(6), rng.random() < 0.5) for a in q.arrows}
        rep = SimplicialRep(q, {v: hexa for v in q.vertices}, maps)

        def trial():
            lim = rep_limit(s_gamma(rep))
            hs = [homology(lim.complex, n).group for n in (0, 1)]
            if [str(g) for g in hs] != ["Z", "Z"]:
                return f"homology {[str(g) for g in hs]}"
            base = s_gamma(rep).complexes[1]
            if any(not _iso(hs[n], homology(base, n).group) for n in (0, 1)):
                return "limit homology differs from the vertex homology"
            for v in q.vertices:
                if not projection_report(lim, v).isomorphism:
                    return f"projection to vertex {v} is not an isomorphism"
        res.run(t, trial)
    return res


def component_product_homology(seed: int = 0, trials: int = 100) -> SuiteResult:
    """Homology of a disjoint union of quivers is the sum over the pieces."""
    rng = random.Random(seed)
    res = SuiteResult("component-product-homology")
    for t in range(trials):
        n1, n2 = rng.randint(1, 3), rng.randint(1, 3)
        q1 = gen.random_quiver(rng, n1, rng.randint(0, 4), first=1, prefix="a")
        q2 = gen.random_quiver(rng, n2, rng.randint(0, 4), first=n1 + 1, prefix="b")
        r1 = gen.random_simplicial_rep(rng, q1, 4)
        r2 = gen.random_simplicial_rep(rng, q2, 4)

        def trial():
            whole = _groups(s_gamma(gen.join_quivers(r1, r2)), 2)
            g1, g2 = _groups(s_gamma(r1), 2), _groups(s_gamma(r2), 2)
            for n in range(3):
                if not _iso(whole[n], FgAbGroup.direct_sum([g1[n], g2[n]])):
                    return f"degree {n}: {whole[n]} vs {g1[n]} and {g2[n]}"
        res.run(t, trial)
    circle = gen.polygon(3)
    constant = {}
    for m in (1, 2, 3):
        pieces = []
        first = 1
        for c in range(m):
            k = rng.randint(1, 3)
            pieces.append(gen.random_quiver(rng, k, k - 1, connected=True, first=first, prefix=f"t{c}_"))
            first += k
        q = pieces[0]
        for p in pieces[1:]:
            q = gen.disjoint_union(q, p)

        def trial():
            hs = _groups(s_gamma(gen.constant_rep(q, circle)), 1)
            constant[m] = [g.to_json() for g in hs]
            want = FgAbGroup.free(m)
            if not (_iso(hs[0], want) and _iso(hs[1], want)):
                return f"constant circle over {m} trees: {hs[0]}, {hs[1]}"
        res.run(f"constant-{m}", trial)
    res.details["constant_circle"] = {str(m): v for m, v in constant.items()}
    return res


def cycle_fixed_vanishing(seed: int = 0, trials: int = 0) -> SuiteResult:
    """Oriented cycles whose round trip doubles chains have zero limit."""
    res = SuiteResult("cycle-fixed-vanishing")
    circle = gen.polygon(3)
    out = {}
    for m in (1, 2, 3):
        def trial():
            cl = cycle_fixed_limit(gen.scaled_cycle_rep(m, circle, 2))
            h1 = homology(cl.limit.complex, 1).group
            out[f"doubling-{m}"] = {"ranks": list(cl.limit.complex.ranks), "H1": str(h1)}
            if not cl.certified:
                return "limit does not match the fixed chains of the round trip"
            if any(cl.limit.complex.ranks) or not h1.is_trivial():
                return f"limit ranks {cl.limit.complex.ranks}, H1 {h1}"
        res.run(f"doubling-{m}", trial)

        def control():
            cl = cycle_fixed_limit(gen.scaled_cycle_rep(m, circle, 1))
            line = Quiver.from_edges(range(1, m + 1), [(f"a{i}", i, i + 1) for i in range(1, m)])
            h_cyc = homology(cl.limit.complex, 1).group
            h_line = _groups(s_gamma(gen.constant_rep(line, circle)), 1)[1]
            out[f"identity-{m}"] = {"H1": str(h_cyc), "line_H1": str(h_line)}
            if not cl.certified or str(h_cyc) != "Z" or str(h_line) != "Z":
                return f"controls give {h_cyc} and {h_line}"
        res.run(f"control-{m}", control)
    res.details["instances"] = out
    return res


ANTIPODAL_FIXTURES = ("hexagon_loop.json", "hexagon_2cycle.json", "hexagon_3cycle.json",
                      "square_loop.json")


def antipodal_h0(seed: int = 0, trials: int = 0, fixtures: Path | None = None) -> SuiteResult:
    """Antipodal polygons: H0 of the quotient by the limit image is Z/2 exactly on odd cycles."""
    res = SuiteResult("antipodal-h0")
    fdir = Path(fixtures) if fixtures else FIXTURES
    out = {}
    for name in ANTIPODAL_FIXTURES:
        def trial():
            rep = parse_input(fdir / name)
            r = antipodal_quotient_h0(rep)
            out[name] = str(r.h0.group)
            want = "Z/2" if has_odd_oriented_cycle(rep.quiver) else "0"
            if str(r.h0.group) != want:
                return f"got {r.h0.group}, expected {want}"
        res.run(name, trial)
    res.details["h0"] = out
    return res


def rho_naturality_suite(seed: int = 0, trials: int = 100) -> SuiteResult:
    """The comparison map to the limit of homology kills boundaries and is natural."""
    rng = random.Random(seed)
    res = SuiteResult("rho-naturality")
    for t in range(trials):
        q = gen.random_quiver(rng, rng.randint(1, 4), rng.randint(0, 5))
        rep = gen.random_simplicial_rep(rng, q, 4)
        theta = s_gamma_morphism(gen.random_quotient_morphism(rng, rep))

        def trial():
            crep = theta.source
            lim = rep_limit(crep)
            for n in (0, 1):
                r = rho(crep, n, lim)
                d = lim.complex.boundary(n + 1)
                for j in range(d.cols):
                    x = lim.inclusion[n] @ d.column(j)
                    for v in q.vertices:
                        if any(r.vertex_homology[v].class_of(lim.component(n, v, x))):
                            return f"degree {n}: a boundary has a nonzero class at vertex {v}"
                if not rho_naturality(theta, n):
                    return f"naturality square fails in degree {n}"
        res.run(t, trial)
    return res


def homotopy_invariance(seed: int = 0, trials: int = 50) -> SuiteResult:
    """Verified homotopies induce equal maps on limit homology; perturbed ones are rejected."""
    rng = random.Random(seed)
    res = SuiteResult("homotopy-invariance")
    rejected = 0
    for t in range(trials):
        q = gen.random_quiver(rng, rng.randint(1, 3), rng.randint(0, 3))
        cone = gen.cone_rep(gen.random_simplicial_rep(rng, q, 3))
        alpha, beta, F = gen.cone_contraction(cone)
        k = rng.choice((1, 1, 2, 3, -1))
        if k != 1:
            alpha, beta, F = gen.scaled_homotopy(alpha, beta, F, k)
        bad = gen.perturb_homotopy(rng, F)

        def trial():
            rep = verify_homotopy(alpha, beta, F)
            if not rep.ok:
                return f"valid homotopy rejected: {rep.failures[0]}"
            if not all(rep.homology_agrees.values()):
                return f"maps on homology differ: {rep.homology_agrees}"
        res.run(t, trial)

        def perturbed():
            nonlocal rejected
            rep = verify_homotopy(alpha, beta, bad)
            if rep.ok:
                return "perturbed homotopy accepted"
            if not rep.failures[0].startswith(("vertex", "arrow")):
                return f"violation not located: {rep.failures[0]}"
            rejected += 1
        res.run(f"perturbed-{t}", perturbed)
    res.details["rejected_perturbations"] = rejected
    return res


def basepoint_relative(seed: int = 0, trials: int = 0) -> SuiteResult:
    """Relative to compatible basepoints, homology agrees above degree 0 and drops one rank in degree 0."""
    res = SuiteResult("basepoint-relative")
    out = {}
    a2 = Quiver.from_edges([1, 2], [("a", 1, 2)])
    circle = gen.polygon(3)
    sphere = SimplicialComplex.from_facets([(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])
    hexa = gen.polygon(6)
    cases = {
        "circle": gen.constant_rep(a2, circle),
        "sphere": gen.constant_rep(a2, sphere),
        "reflected-hexagon": SimplicialRep(a2, {1: hexa, 2: hexa},
                                           {"a": gen.polygon_map(hexa, hexa, 0, True)}),
    }
    for name, rep in cases.items():
        def trial():
            b = basepoint_comparison(rep, {1: 0, 2: 0}, 2)
            out[name] = {"absolute": [str(b.absolute[n].group) for n in range(3)],
                         "relative": [str(b.relative[n].group) for n in range(3)]}
            if not b.higher_degrees_agree:
                return "relative and absolute homology differ above degree 0"
            if not b.degree0_ok:
                return "degree 0 ranks do not drop by one"
        res.run(name, trial)
    res.details["instances"] = out
    return res


def _forward_closure(rep: SimplicialRep, seeds: dict) -> dict:
    """Smallest subcomplexes containing ``seeds`` and preserved by the arrow maps."""
    simp = {v: {tuple(s) for s in seeds.get(v, ())} for v in rep.quiver.vertices}
    changed = True
    while changed:
        changed = False
        for a in rep.quiver.arrows:
            f = rep.maps[a.id]
            for s in list(simp[a.src]):
                img = f.image(s)
                if img not in simp[a.tgt]:
                    simp[a.tgt].add(img)
                    changed = True
    return {v: SimplicialComplex((), simp[v]) for v in rep.quiver.vertices}


def excision(seed: int = 0, trials: int = 50) -> SuiteResult:
    """Quotienting by a cover by two subrepresentations kills H0 and H1 of the limit."""
    rng = random.Random(seed)
    res = SuiteResult("excision")
    for t in range(trials):
        q = gen.random_quiver(rng, rng.randint(1, 3), rng.randint(0, 4))
        rep = gen.random_simplicial_rep(rng, q, 4)
        seeds = {v: rng.sample(k.all_simplices(), rng.randint(0, min(2, len(k.all_simplices())))) for v, k in rep.complexes.items()}
        A = _forward_closure(rep, seeds)
        rest = {v: [s for s in rep.complexes[v].facets if s not in A[v]] for v in q.vertices}
        B = _forward_closure(rep, rest)

        def trial():
            r = excision_check(rep, A, B)
            if not r.covered:
                return "constructed pair does not cover"
            if not r.vanishes:
                return f"H0 = {r.h0}, H1 = {r.h1}"
        res.run(t, trial)
    hexa = gen.polygon(6)
    loop = Quiver.from_edges([1], [("a", 1, 1)])
    anti = SimplicialRep(loop, {1: hexa}, {"a": SimplicialMap(hexa, hexa, {i: (i + 3) % 6 for i in range(6)})})
    arcs = (SimplicialComplex.from_facets([(0, 1), (1, 2), (2, 3)]),
            SimplicialComplex.from_facets([(3, 4), (4, 5), (0, 5)]))

    def swapped_arcs():
        r = excision_check(anti, {1: arcs[0]}, {1: arcs[1]})
        res.details["swapped_arcs"] = {"H0": str(r.h0), "H1": str(r.h1), "covered": r.covered}
        if not (r.covered and r.vanishes):
            return f"H0 = {r.h0}, H1 = {r.h1}"
    res.run("swapped-arcs", swapped_arcs)
    return res


def left_exactness(seed: int = 0, trials: int = 100) -> SuiteResult:
    """The limit keeps vertexwise short exact sequences left exact."""
    rng = random.Random(seed)
    res = SuiteResult("left-exactness")
    for t in range(trials):
        q = gen.random_quiver(rng, rng.randint(1, 5), rng.randint(0, 6))
        alpha, beta = gen.random_ab_ses(rng, q, rng.randint(1, 3), rng.choice((None, None, 2, 3, 4)))

        def trial():
            r = left_exactness_check(alpha, beta)
            if not r.exact:
                return f"not left exact: {r}"
        res.run(t, trial)
    return res


# attachment spaces


def at_component_count(seed: int = 0, trials: int = 100) -> SuiteResult:
    """With connected vertex complexes the attachment space has one piece per quiver component."""
    rng = random.Random(seed)
    res = SuiteResult("at-component-count")
    for t in range(trials):
        q = gen.random_quiver(rng, rng.randint(1, 6), rng.randint(0, 6))
        rep = gen.random_simplicial_rep(rng, q, 4, connected=True)

        def trial():
            got, want = component_count(at_space(rep)), len(q.components())
            if got != want:
                return f"{got} components, quiver has {want}"
        res.run(t, trial)
    return res


def at_split(seed: int = 0, trials: int = 50) -> SuiteResult:
    """Vertex-disjoint pieces embed into the attachment space and partition its classes."""
    rng = random.Random(seed)
    res = SuiteResult("at-split")
    for t in range(trials):
        q = gen.random_quiver(rng, rng.randint(1, 4), rng.randint(0, 5))
        r1 = gen.random_simplicial_rep(rng, q, 4)
        r2 = gen.random_simplicial_rep(rng, q, 4, offset=100)
        rep = gen.union_rep(r1, r2)
        parts = {v: (r1.complexes[v], r2.complexes[v]) for v in q.vertices}

        def trial():
            r = split_analysis(rep, parts)
            if not r.ok:
                return f"split report {r}"
        res.run(t, trial)
    return res


def sigma_natural(seed: int = 0, trials: int = 100) -> SuiteResult:
    """sigma is base independent, a chain map and natural; doubling on the antipodal loop."""
    rng = random.Random(seed)
    res = SuiteResult("sigma-natural")
    for t in range(trials):
        q = gen.random_quiver(rng, rng.randint(1, 4), rng.randint(0, 5))
        rep = gen.random_simplicial_rep(rng, q, 4)
        theta = gen.random_quotient_morphism(rng, rep)

        def trial():
            s = sigma(rep)
            for c in s.components:
                if not c.base_independent:
                    return f"component {c.vertices}: pushes depend on the vertex"
                if not c.chain_map:
                    return f"component {c.vertices}: not a chain map"
            if not sigma_naturality(theta, s):
                return "naturality square fails"
        res.run(t, trial)

    def antipodal():
        rep = parse_input(FIXTURES / "hexagon_loop.json")
        h = h_natural(rep, 0)
        res.details["hexagon_loop_h0"] = h.matrix.tolist()
        if str(h.source) != "Z" or str(h.target) != "Z" or h.matrix.tolist() != [[2]]:
            return f"H0(sigma) = {h}"
    res.run("hexagon-loop", antipodal)
    return res


SUITES = {
    "system-roundtrip": system_roundtrip,
    "empty-end-exactness": empty_end_exactness,
    "grading-criterion": grading_criterion,
    "point-homology": point_homology,
    "line-of-isomorphisms": line_of_isomorphisms,
    "component-product-homology": component_product_homology,
    "cycle-fixed-vanishing": cycle_fixed_vanishing,
    "antipodal-h0": antipodal_h0,
    "rho-naturality": rho_naturality_suite,
    "homotopy-invariance": homotopy_invariance,
    "basepoint-relative": basepoint_relative,
    "excision": excision,
    "left-exactness": left_exactness,
    "at-component-count": at_component_count,
    "at-split": at_split,
    "sigma-natural": sigma_natural,
}


def run_suite(name: str, seed: int = 0, fixtures: Path | None = None) -> SuiteResult:
    fn = SUITES[name]
    if fn is antipodal_h0:
        return fn(seed, fixtures=fixtures)
    return fn(seed)
