"""Finite categories, functors, natural transformations, and marked arrow classes.

Objects and morphisms are opaque string ids; all equality is id equality.
Composition tables may be partial (e.g. truncated free categories); totality
is one of the axioms reported by :func:`validate_category`.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class SimpcatError(Exception):
    """Base class for errors raised by this package."""


class InputError(SimpcatError):
    """Malformed or inconsistent input data."""


class ResourceBudgetError(SimpcatError):
    """An enumeration exceeded its explicit budget; the message names the bound."""


class FinCategory:
    """A finite category given by objects, morphisms, identities and a composition table.

    ``morphisms`` maps morphism id -> (source object id, target object id).
    ``compose`` maps (g, f) -> g∘f for composable pairs (tgt(f) == src(g)).
    Identities may be omitted: each missing one is synthesized as ``id_<object>``
    together with its unit composites.
    """

    def __init__(self, objects, morphisms, compose=None, identities=None):
        self.objects = tuple(sorted(objects))
        self.morphisms = {m: (s, t) for m, (s, t) in sorted(morphisms.items())}
        if len(self.objects) != len(set(self.objects)):
            raise InputError("duplicate object ids")
        for m, (s, t) in self.morphisms.items():
            if s not in self.objects or t not in self.objects:
                raise InputError(f"morphism {m!r} has endpoints outside the object set")
        self.identities = dict(identities) if identities else {}
        for x in self.objects:
            if x not in self.identities:
                ident = f"id_{x}"
                self.identities[x] = ident
                if ident not in self.morphisms:
                    self.morphisms[ident] = (x, x)
        for x, i in self.identities.items():
            if self.morphisms.get(i) != (x, x):
                raise InputError(f"identity {i!r} of {x!r} is not an endomorphism of {x!r}")
        self.compose_map = dict(compose) if compose else {}
        # synthesize unit composites so that hand-written tables can omit them
        for m, (s, t) in self.morphisms.items():
            self.compose_map.setdefault((self.identities[t], m), m)
            self.compose_map.setdefault((m, self.identities[s]), m)

    def src(self, m):
        return self.morphisms[m][0]

    def tgt(self, m):
        return self.morphisms[m][1]

    def identity(self, x):
        return self.identities[x]

    def is_identity(self, m):
        return self.identities.get(self.src(m)) == m

    def hom(self, x, y):
        return [m for m, (s, t) in self.morphisms.items() if s == x and t == y]

    def composable_pairs(self):
        by_src = {}
        for m, (s, _) in self.morphisms.items():
            by_src.setdefault(s, []).append(m)
        for f, (_, t) in self.morphisms.items():
            for g in by_src.get(t, ()):
                yield g, f

    def compose(self, g, f):
        """g∘f; raises InputError when the pair is not in the table."""
        if self.tgt(f) != self.src(g):
            raise InputError(f"({g!r}, {f!r}) is not composable")
        try:
            return self.compose_map[(g, f)]
        except KeyError:
            raise InputError(f"composite of ({g!r}, {f!r}) is missing from the table") from None

    def compose_or_none(self, g, f):
        return self.compose_map.get((g, f))

    def inverse(self, m):
        """A two-sided inverse of m, found by exhaustive search, or None."""
        s, t = self.morphisms[m]
        for w in sorted(self.hom(t, s)):
            if (self.compose_or_none(w, m) == self.identities[s]
                    and self.compose_or_none(m, w) == self.identities[t]):
                return w
        return None

    def is_iso(self, m):
        return self.inverse(m) is not None

    def same_presentation(self, other):
        return (self.objects == other.objects
                and self.morphisms == other.morphisms
                and self.identities == other.identities
                and self.compose_map == other.compose_map)

    def __repr__(self):
        return f"FinCategory({len(self.objects)} objects, {len(self.morphisms)} morphisms)"


def validate_category(cat):
    """Report of violated category axioms; empty iff ``cat`` is a category.

    Each violation is a string naming the witnessing morphisms.
    """
    report = []
    comp = cat.compose_map
    for (g, f), gf in comp.items():
        if g not in cat.morphisms or f not in cat.morphisms or gf not in cat.morphisms:
            report.append(f"composite entry ({g},{f})->{gf} mentions unknown morphisms")
            continue
        if cat.tgt(f) != cat.src(g):
            report.append(f"composite defined on non-composable pair ({g},{f})")
        elif cat.morphisms[gf] != (cat.src(f), cat.tgt(g)):
            report.append(f"composite {gf} of ({g},{f}) has wrong endpoints")
    for g, f in cat.composable_pairs():
        if (g, f) not in comp:
            report.append(f"composition not total: ({g},{f}) undefined")
    for m in cat.morphisms:
        i_s, i_t = cat.identities[cat.src(m)], cat.identities[cat.tgt(m)]
        if comp.get((m, i_s)) != m:
            report.append(f"right identity law fails for {m}")
        if comp.get((i_t, m)) != m:
            report.append(f"left identity law fails for {m}")
    # associativity over every composable triple
    by_src = {}
    for m, (s, _) in cat.morphisms.items():
        by_src.setdefault(s, []).append(m)
    for f, (_, tf) in cat.morphisms.items():
        for g in by_src.get(tf, ()):
            gf = comp.get((g, f))
            if gf is None:
                continue
            for h in by_src.get(cat.tgt(g), ()):
                hg = comp.get((h, g))
                left = comp.get((h, gf))
                right = comp.get((hg, f)) if hg is not None else None
                if hg is None or left is None or right is None:
                    continue
                if left != right:
                    report.append(f"associativity fails on ({h},{g},{f}): {left} != {right}")
    return report


def groupoid_core(cat):
    """The wide-on-isos subcategory: same objects, exactly the invertible morphisms."""
    isos = {m for m in cat.morphisms if cat.is_iso(m)}
    morphisms = {m: cat.morphisms[m] for m in isos}
    compose = {(g, f): gf for (g, f), gf in cat.compose_map.items()
               if g in isos and f in isos}
    return FinCategory(cat.objects, morphisms, compose, dict(cat.identities))


@dataclass(frozen=True)
class WeakEquivalenceClass:
    """A marked class of morphisms of a parent category, containing all identities."""

    parent: FinCategory
    members: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        missing = set(self.members) - set(self.parent.morphisms)
        if missing:
            raise InputError(f"marked morphisms not in the category: {sorted(missing)}")
        object.__setattr__(
            self, "members",
            frozenset(self.members) | frozenset(self.parent.identities.values()))

    def __contains__(self, m):
        return m in self.members


@dataclass
class ClosureReport:
    two_of_three: bool
    two_of_six: bool
    retract_closed: bool
    wide: bool
    contains_isos: bool
    witnesses: dict = field(default_factory=dict)


def check_closure_properties(cat, weq):
    """Exhaustively decide the standard closure properties of a marked class.

    ``weq`` may be a WeakEquivalenceClass or any iterable of morphism ids; the
    ids are taken exactly as given (identity arrows are not added), since
    identity-containment is itself one of the properties under test (it is part
    of ``wide``).
    """
    w = weq.members if isinstance(weq, WeakEquivalenceClass) else frozenset(weq)
    if not w <= set(cat.morphisms):
        raise InputError("marked class contains unknown morphism ids")
    witnesses = {}

    two_of_three = True
    for g, f in cat.composable_pairs():
        gf = cat.compose_or_none(g, f)
        if gf is None:
            continue
        n = sum(1 for m in (f, g, gf) if m in w)
        if n == 2:
            two_of_three = False
            witnesses.setdefault("two_of_three", (g, f, gf))
            break

    two_of_six = True
    done = False
    for f in cat.morphisms:
        if done:
            break
        for g in cat.morphisms:
            if cat.src(g) != cat.tgt(f):
                continue
            gf = cat.compose_or_none(g, f)
            if gf is None:
                continue
            for h in cat.morphisms:
                if cat.src(h) != cat.tgt(g):
                    continue
                hg = cat.compose_or_none(h, g)
                hgf = cat.compose_or_none(h, gf)
                if hg is None or hgf is None:
                    continue
                if hg in w and gf in w:
                    if not all(m in w for m in (f, g, h, hgf)):
                        two_of_six = False
                        witnesses.setdefault("two_of_six", (h, g, f))
                        done = True
                        break
            if done:
                break

    # retracts taken over all commuting retract diagrams in the ambient category
    retract_closed = True
    sections = [(a, r) for a in cat.morphisms for r in cat.morphisms
                if cat.src(r) == cat.tgt(a) and cat.tgt(r) == cat.src(a)
                and cat.compose_or_none(r, a) == cat.identities[cat.src(a)]]
    done = False
    for a, r in sections:
        for b, q in sections:
            for s in cat.morphisms:
                if s not in w:
                    continue
                if (cat.src(s), cat.tgt(s)) != (cat.tgt(a), cat.tgt(b)):
                    continue
                for t in cat.morphisms:
                    if (cat.src(t), cat.tgt(t)) != (cat.src(a), cat.src(b)):
                        continue
                    if t in w:
                        continue
                    if (cat.compose_or_none(s, a) == cat.compose_or_none(b, t)
                            and cat.compose_or_none(t, r) == cat.compose_or_none(q, s)):
                        retract_closed = False
                        witnesses.setdefault("retract", (t, s))
                        done = True
                        break
                if done:
                    break
            if done:
                break
        if done:
            break

    # wide = contains all identities and is closed under composition
    wide = all(i in w for i in cat.identities.values())
    if not wide:
        witnesses.setdefault("wide", "missing identities")
    else:
        for g, f in cat.composable_pairs():
            if g in w and f in w:
                gf = cat.compose_or_none(g, f)
                if gf is not None and gf not in w:
                    wide = False
                    witnesses.setdefault("wide", (g, f, gf))
                    break

    contains_isos = True
    for m in cat.morphisms:
        if cat.is_iso(m) and m not in w:
            contains_isos = False
            witnesses.setdefault("contains_isos", m)
            break

    return ClosureReport(two_of_three, two_of_six, retract_closed, wide,
                         contains_isos, witnesses)


class Functor:
    """A functor between finite categories, as explicit object and morphism maps."""

    def __init__(self, source, target, object_map, morphism_map):
        self.source = source
        self.target = target
        self.object_map = dict(object_map)
        self.morphism_map = dict(morphism_map)

    def on_object(self, x):
        return self.object_map[x]

    def on_morphism(self, m):
        return self.morphism_map[m]

    def validate(self):
        report = []
        src, tgt = self.source, self.target
        for x in src.objects:
            if x not in self.object_map or self.object_map[x] not in tgt.objects:
                report.append(f"object {x} not mapped into the target")
        for m, (s, t) in src.morphisms.items():
            fm = self.morphism_map.get(m)
            if fm is None or fm not in tgt.morphisms:
                report.append(f"morphism {m} not mapped into the target")
                continue
            if tgt.morphisms[fm] != (self.object_map[s], self.object_map[t]):
                report.append(f"{m}: endpoints not preserved")
        for x in src.objects:
            if self.morphism_map.get(src.identity(x)) != tgt.identity(self.object_map[x]):
                report.append(f"identity of {x} not preserved")
        for (g, f), gf in src.compose_map.items():
            fg, ff = self.morphism_map.get(g), self.morphism_map.get(f)
            if fg is None or ff is None:
                continue
            if tgt.compose_or_none(fg, ff) != self.morphism_map.get(gf):
                report.append(f"composition not preserved on ({g},{f})")
        return report

    def then(self, other):
        """other ∘ self."""
        if other.source is not self.target and not other.source.same_presentation(self.target):
            raise InputError("functors not composable")
        return Functor(self.source, other.target,
                       {x: other.object_map[y] for x, y in self.object_map.items()},
                       {m: other.morphism_map[n] for m, n in self.morphism_map.items()})

    @staticmethod
    def identity(cat):
        return Functor(cat, cat, {x: x for x in cat.objects},
                       {m: m for m in cat.morphisms})

    def __repr__(self):
        return f"Functor({self.source!r} -> {self.target!r})"


class NatTransformation:
    """A natural transformation between parallel functors, given by components."""

    def __init__(self, source, target, components):
        parallel = (source.source is target.source or
                    source.source.same_presentation(target.source)) and \
                   (source.target is target.target or
                    source.target.same_presentation(target.target))
        if not parallel:
            raise InputError("functors are not parallel")
        self.source = source
        self.target = target
        self.components = dict(components)

    def validate(self):
        report = []
        dom, cod = self.source.source, self.source.target
        for x in dom.objects:
            c = self.components.get(x)
            if c is None or c not in cod.morphisms:
                report.append(f"no component at {x}")
                continue
            want = (self.source.object_map[x], self.target.object_map[x])
            if cod.morphisms[c] != want:
                report.append(f"component at {x} has wrong endpoints")
        for m, (s, t) in dom.morphisms.items():
            left = cod.compose_or_none(self.components[t], self.source.morphism_map[m])
            right = cod.compose_or_none(self.target.morphism_map[m], self.components[s])
            if left is None or right is None or left != right:
                report.append(f"naturality square fails at {m}")
        return report


@dataclass(frozen=True)
class ReflexiveGraph:
    """A directed graph with one distinguished reflexive loop per vertex.

    ``edges`` maps edge id -> (source vertex, target vertex); ``loops`` maps
    vertex -> its distinguished loop edge id. Loops act as identities in the
    free category.
    """

    vertices: tuple
    edges: dict
    loops: dict

    def __post_init__(self):
        for v in self.vertices:
            loop = self.loops.get(v)
            if loop is None or self.edges.get(loop) != (v, v):
                raise InputError(f"vertex {v!r} lacks a distinguished reflexive loop")


def free_category(graph, max_word_len, require_complete=False):
    """Bounded free category on a reflexive graph.

    Morphisms are composable words of non-loop edges of length <= max_word_len,
    with the distinguished loops as identities.  Returns (category, complete)
    where ``complete`` is true iff no maximal-length word extends further, i.e.
    the truncation lost nothing.  With require_complete=True an incomplete
    truncation raises instead.
    """
    if max_word_len < 1:
        raise InputError("max_word_len must be >= 1")
    gen = {e: st for e, st in graph.edges.items() if e not in graph.loops.values()}
    by_len = [[()]]
    current = [()]
    for _ in range(max_word_len):
        nxt = []
        for w in current:
            for e, (s, t) in sorted(gen.items()):
                if not w or gen[w[-1]][1] == s:
                    nxt.append(w + (e,))
        by_len.append(nxt)
        current = nxt
    complete = True
    for w in by_len[max_word_len]:
        last_tgt = gen[w[-1]][1]
        if any(s == last_tgt for _, (s, _) in gen.items()):
            complete = False
            break
    if require_complete and not complete:
        raise InputError(f"free category is not complete at word length {max_word_len}")

    def word_id(w):
        return ".".join(w)

    morphisms = {}
    identities = {}
    for v in graph.vertices:
        identities[v] = f"id_{v}"
        morphisms[f"id_{v}"] = (v, v)
    word_of = {}
    for n in range(1, max_word_len + 1):
        for w in by_len[n]:
            mid = word_id(w)
            morphisms[mid] = (gen[w[0]][0], gen[w[-1]][1])
            word_of[mid] = w
    compose = {}
    for m1, w1 in word_of.items():
        for m2, w2 in word_of.items():
            if gen[w1[-1]][1] == gen[w2[0]][0]:
                w = w1 + w2
                if len(w) <= max_word_len:
                    compose[(m2, m1)] = word_id(w)
    cat = FinCategory(graph.vertices, morphisms, compose, identities)
    return cat, complete


def product_category(c, d):
    """The product category; object and morphism ids are '(a,b)' pairs."""
    objects = [f"({x},{y})" for x in c.objects for y in d.objects]
    morphisms = {}
    identities = {}
    for m, (ms, mt) in c.morphisms.items():
        for n, (ns, nt) in d.morphisms.items():
            morphisms[f"({m},{n})"] = (f"({ms},{ns})", f"({mt},{nt})")
    for x in c.objects:
        for y in d.objects:
            identities[f"({x},{y})"] = f"({c.identity(x)},{d.identity(y)})"
    compose = {}
    for (g1, f1), h1 in c.compose_map.items():
        for (g2, f2), h2 in d.compose_map.items():
            compose[(f"({g1},{g2})", f"({f1},{f2})")] = f"({h1},{h2})"
    return FinCategory(objects, morphisms, compose, identities)


def all_functors(source, target):
    """Every functor source -> target, by exhaustive backtracking search.

    Deterministic: objects and morphisms are scanned in sorted order.
    """
    objs = list(source.objects)
    morphs = sorted(m for m in source.morphisms if not source.is_identity(m))
    results = []

    def assign_morphisms(obj_map, i, mor_map):
        if i == len(morphs):
            f = Functor(source, target, obj_map,
                        dict(mor_map, **{source.identity(x): target.identity(obj_map[x])
                                         for x in objs}))
            if not f.validate():
                results.append(f)
            return
        m = morphs[i]
        s, t = source.morphisms[m]
        for cand in sorted(target.hom(obj_map[s], obj_map[t])):
            mor_map[m] = cand
            ok = True
            # early composition pruning against already-assigned morphisms
            for (g, f_), gf in source.compose_map.items():
                im_g = mor_map.get(g) or (target.identity(obj_map[source.src(g)])
                                          if source.is_identity(g) else None)
                im_f = mor_map.get(f_) or (target.identity(obj_map[source.src(f_)])
                                           if source.is_identity(f_) else None)
                im_gf = mor_map.get(gf) or (target.identity(obj_map[source.src(gf)])
                                            if source.is_identity(gf) else None)
                if im_g is not None and im_f is not None and im_gf is not None:
                    if target.compose_or_none(im_g, im_f) != im_gf:
                        ok = False
                        break
            if ok:
                assign_morphisms(obj_map, i + 1, mor_map)
            del mor_map[m]

    def assign_objects(i, obj_map):
        if i == len(objs):
            assign_morphisms(dict(obj_map), 0, {})
            return
        for y in target.objects:
            obj_map[objs[i]] = y
            assign_objects(i + 1, obj_map)
            del obj_map[objs[i]]

    assign_objects(0, {})
    return results
