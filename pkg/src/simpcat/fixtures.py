"""Small fixture categories used across the test suite and the CLI battery."""

from __future__ import annotations

from .fincat import FinCategory, ReflexiveGraph, WeakEquivalenceClass


def ordinal(n):
    """The poset category [n] = 0 -> 1 -> ... -> n; arrow i<=j has id 'a<i><j>'."""
    objects = [str(i) for i in range(n + 1)]
    morphisms = {}
    identities = {}
    for i in range(n + 1):
        identities[str(i)] = f"a{i}{i}"
        for j in range(i, n + 1):
            morphisms[f"a{i}{j}"] = (str(i), str(j))
    compose = {}
    for i in range(n + 1):
        for j in range(i, n + 1):
            for k in range(j, n + 1):
                compose[(f"a{j}{k}", f"a{i}{j}")] = f"a{i}{k}"
    return FinCategory(objects, morphisms, compose, identities)


def walking_arrow():
    return ordinal(1)


def poset_category(elements, leq):
    """The category of a finite poset; arrow x<=y has id 'x<=y'."""
    objects = list(elements)
    morphisms = {}
    identities = {}
    for x in objects:
        for y in objects:
            if leq(x, y):
                mid = f"{x}<={y}"
                morphisms[mid] = (x, y)
                if x == y:
                    identities[x] = mid
    compose = {}
    for x in objects:
        for y in objects:
            if not leq(x, y):
                continue
            for z in objects:
                if leq(y, z):
                    compose[(f"{y}<={z}", f"{x}<={y}")] = f"{x}<={z}"
    return FinCategory(objects, morphisms, compose, identities)


def commutative_square():
    """The poset 2x2: 00 <= 01,10 <= 11."""
    elems = ["00", "01", "10", "11"]
    return poset_category(elems, lambda x, y: x[0] <= y[0] and x[1] <= y[1])


def span():
    """b <-s- a -f-> c."""
    morphisms = {"s": ("a", "b"), "f": ("a", "c")}
    return FinCategory(["a", "b", "c"], morphisms)


def cospan():
    """b -g-> a <-h- c."""
    morphisms = {"g": ("b", "a"), "h": ("c", "a")}
    return FinCategory(["a", "b", "c"], morphisms)


def parallel_pair():
    """a => b with arrows u, v."""
    morphisms = {"u": ("a", "b"), "v": ("a", "b")}
    return FinCategory(["a", "b"], morphisms)


def iso_pair():
    """The free-living isomorphism: u: a -> b and v: b -> a, mutually inverse."""
    morphisms = {"u": ("a", "b"), "v": ("b", "a")}
    compose = {("v", "u"): "id_a", ("u", "v"): "id_b"}
    return FinCategory(["a", "b"], morphisms, compose)


def cyclic_group(order):
    """The one-object groupoid of Z/order; generator powers are 'g<k>'."""
    objects = ["*"]
    morphisms = {f"g{k}": ("*", "*") for k in range(order)}
    identities = {"*": "g0"}
    compose = {(f"g{a}", f"g{b}"): f"g{(a + b) % order}"
               for a in range(order) for b in range(order)}
    return FinCategory(objects, morphisms, compose, identities)


def iso_with_idempotent():
    """Two objects joined by an isomorphism plus a non-invertible idempotent on b.

    Morphisms: u: a->b, v: b->a inverse to each other; e: b->b idempotent;
    w = e∘u, q = v∘e∘u, ve = v∘e close the composition table.
    """
    morphisms = {
        "u": ("a", "b"), "v": ("b", "a"), "e": ("b", "b"),
        "w": ("a", "b"), "ve": ("b", "a"), "q": ("a", "a"),
    }
    compose = {
        ("v", "u"): "id_a", ("u", "v"): "id_b",
        ("e", "e"): "e", ("e", "u"): "w", ("v", "e"): "ve",
        ("e", "w"): "w", ("w", "v"): "e", ("ve", "u"): "q",
        ("v", "w"): "q", ("u", "q"): "w", ("q", "v"): "ve",
        ("w", "ve"): "e", ("ve", "w"): "q", ("q", "q"): "q",
        ("w", "q"): "w", ("q", "ve"): "ve", ("u", "ve"): "e",
        ("ve", "e"): "ve",
    }
    return FinCategory(["a", "b"], morphisms, compose)


def delta_leq(n):
    """The category of ordinals [0]..[n] and monotone maps.

    A map f: [p] -> [q] has id 'p>q:v0v1...vp' listing its values.
    """
    objects = [f"[{i}]" for i in range(n + 1)]
    morphisms = {}
    identities = {}
    maps = {}

    def monotone(p, q):
        def rec(i, lo):
            if i == p + 1:
                yield ()
                return
            for v in range(lo, q + 1):
                for rest in rec(i + 1, v):
                    yield (v,) + rest
        return rec(0, 0)

    for p in range(n + 1):
        for q in range(n + 1):
            for vals in monotone(p, q):
                mid = f"{p}>{q}:" + "".join(str(v) for v in vals)
                morphisms[mid] = (f"[{p}]", f"[{q}]")
                maps[mid] = (p, q, vals)
                if p == q and vals == tuple(range(p + 1)):
                    identities[f"[{p}]"] = mid
    compose = {}
    for g, (gp, gq, gv) in maps.items():
        for f, (fp, fq, fv) in maps.items():
            if fq == gp:
                vals = tuple(gv[v] for v in fv)
                compose[(g, f)] = f"{fp}>{gq}:" + "".join(str(v) for v in vals)
    return FinCategory(objects, morphisms, compose, identities)


def ordinal_graph(n):
    """The underlying reflexive graph of [n]: loops plus covering edges i -> i+1."""
    vertices = tuple(str(i) for i in range(n + 1))
    edges = {f"l{i}": (str(i), str(i)) for i in range(n + 1)}
    edges.update({f"e{i}": (str(i), str(i + 1)) for i in range(n)})
    loops = {str(i): f"l{i}" for i in range(n + 1)}
    return ReflexiveGraph(vertices, edges, loops)


def one_loop_graph():
    """One vertex with a distinguished loop and one extra non-loop edge e."""
    return ReflexiveGraph(("x",), {"l": ("x", "x"), "e": ("x", "x")}, {"x": "l"})


def two_cycle_graph():
    """Two vertices with edges both ways (plus distinguished loops)."""
    return ReflexiveGraph(
        ("x", "y"),
        {"lx": ("x", "x"), "ly": ("y", "y"), "e": ("x", "y"), "f": ("y", "x")},
        {"x": "lx", "y": "ly"})


def weq(cat, members=()):
    return WeakEquivalenceClass(cat, frozenset(members))


def weq_all(cat):
    return WeakEquivalenceClass(cat, frozenset(cat.morphisms))


def category_family():
    """The standard fixture family, keyed by name."""
    return {
        "ordinal1": ordinal(1),
        "ordinal2": ordinal(2),
        "ordinal3": ordinal(3),
        "square": commutative_square(),
        "span": span(),
        "cospan": cospan(),
        "parallel": parallel_pair(),
        "iso": iso_pair(),
        "z2": cyclic_group(2),
        "idem": iso_with_idempotent(),
    }


def groupoid_names():
    return ("iso", "z2")
