"""Small category kernel: law checks over sampled diagrams.

Categories are data: an identity rule, a composition rule on arrow
payloads, and (optionally) a payload validator.  Arrow equality is payload
equality, so instances are expected to keep payloads in canonical form.
Checks return lists of report entries {law, sample_id, status, witness};
an empty violation list is a pass.  All scans are deterministic: arrows
are taken in the order given, objects in sorted repr order.
"""

from dataclasses import dataclass


class CategoryError(ValueError):
    """Raised for structurally unusable inputs, not for law violations."""


@dataclass(frozen=True)
class ArrowRecord:
    arrow_id: str
    dom: object
    cod: object
    payload: object


class CategorySpec:
    def __init__(self, name, identity, compose, validate_arrow=None):
        self.name = name
        self._identity = identity
        self._compose = compose
        self._validate_arrow = validate_arrow

    def identity_arrow(self, obj):
        return ArrowRecord("id", obj, obj, self._identity(obj))

    def compose(self, a2, a1):
        if a1.cod != a2.dom:
            raise CategoryError(
                "arrows %s and %s are not composable" % (a2.arrow_id, a1.arrow_id)
            )
        try:
            payload = self._compose(a2.payload, a1.payload)
        except Exception as exc:
            raise CategoryError("composition rule failed: %s" % exc) from exc
        return ArrowRecord(
            "%s*%s" % (a2.arrow_id, a1.arrow_id), a1.dom, a2.cod, payload
        )

    def arrow_is_valid(self, record):
        if self._validate_arrow is None:
            return True
        return self._validate_arrow(record)


class FunctorSpec:
    def __init__(self, name, source, target, object_map, arrow_map):
        self.name = name
        self.source = source
        self.target = target
        self.object_map = object_map
        self.arrow_map = arrow_map

    def apply(self, record):
        return ArrowRecord(
            "%s(%s)" % (self.name, record.arrow_id),
            self.object_map(record.dom),
            self.object_map(record.cod),
            self.arrow_map(record.payload),
        )


class NatTransSpec:
    """One component arrow per object, with its two-sided inverse.

    ``component(obj)`` must return the payload of the arrow at obj from
    ``source_of(obj)`` to ``target_of(obj)``; returning None means the
    component is missing, which the checks treat as a hard error.
    """

    def __init__(self, name, component, inverse, source_of, target_of):
        self.name = name
        self.component = component
        self.inverse = inverse
        self.source_of = source_of
        self.target_of = target_of

    def component_record(self, obj):
        payload = self.component(obj)
        if payload is None:
            raise CategoryError("%s has no component at %r" % (self.name, obj))
        return ArrowRecord(
            "%s[%r]" % (self.name, obj), self.source_of(obj), self.target_of(obj), payload
        )

    def inverse_record(self, obj):
        payload = self.inverse(obj)
        if payload is None:
            raise CategoryError("%s has no inverse component at %r" % (self.name, obj))
        return ArrowRecord(
            "%s^-1[%r]" % (self.name, obj),
            self.target_of(obj),
            self.source_of(obj),
            payload,
        )


def _entry(law, sample_id, ok, witness=None):
    return {
        "law": law,
        "sample_id": sample_id,
        "status": "pass" if ok else "fail",
        "witness": None if ok else witness,
    }


def violations(report):
    return [e for e in report if e["status"] != "pass"]


def _sample_objects(arrows):
    seen = {}
    for a in arrows:
        for obj in (a.dom, a.cod):
            seen.setdefault(repr(obj), obj)
    return [seen[k] for k in sorted(seen)]


def check_category_laws(cat, arrows, max_pairs=400, max_triples=400):
    """Identity and associativity over the sampled arrow pool."""
    report = []
    for a in arrows:
        left = cat.compose(cat.identity_arrow(a.cod), a)
        right = cat.compose(a, cat.identity_arrow(a.dom))
        report.append(
            _entry(
                "identity",
                a.arrow_id,
                left.payload == a.payload and right.payload == a.payload,
                "identity composite changed the arrow",
            )
        )
        report.append(
            _entry(
                "arrow-validity",
                a.arrow_id,
                cat.arrow_is_valid(a),
                "arrow record fails the category validator",
            )
        )
    pairs = []
    for a2 in arrows:
        for a1 in arrows:
            if a1.cod == a2.dom:
                pairs.append((a2, a1))
                if len(pairs) >= max_pairs:
                    break
        if len(pairs) >= max_pairs:
            break
    triples = 0
    for a3, a2 in pairs:
        if triples >= max_triples:
            break
        for a1 in arrows:
            if a1.cod != a2.dom:
                continue
            lhs = cat.compose(cat.compose(a3, a2), a1)
            rhs = cat.compose(a3, cat.compose(a2, a1))
            report.append(
                _entry(
                    "associativity",
                    "%s*%s*%s" % (a3.arrow_id, a2.arrow_id, a1.arrow_id),
                    lhs.payload == rhs.payload,
                    "associativity mismatch",
                )
            )
            triples += 1
            if triples >= max_triples:
                break
    return report


def check_functor_laws(functor, arrows, max_pairs=400):
    """F(id) = id, F(g . f) = F(g) . F(f), and dom/cod preservation."""
    src, dst = functor.source, functor.target
    report = []
    for obj in _sample_objects(arrows):
        mapped = functor.apply(src.identity_arrow(obj))
        expected = dst.identity_arrow(functor.object_map(obj))
        report.append(
            _entry(
                "functor-identity",
                repr(obj),
                mapped.payload == expected.payload,
                "F(id) differs from id",
            )
        )
    for a in arrows:
        image = functor.apply(a)
        report.append(
            _entry(
                "functor-endpoints",
                a.arrow_id,
                image.dom == functor.object_map(a.dom)
                and image.cod == functor.object_map(a.cod)
                and dst.arrow_is_valid(image),
                "image endpoints disagree with the object map",
            )
        )
    count = 0
    for a2 in arrows:
        if count >= max_pairs:
            break
        for a1 in arrows:
            if a1.cod != a2.dom:
                continue
            lhs = functor.apply(src.compose(a2, a1))
            rhs = dst.compose(functor.apply(a2), functor.apply(a1))
            report.append(
                _entry(
                    "functor-composition",
                    "%s*%s" % (a2.arrow_id, a1.arrow_id),
                    lhs.payload == rhs.payload,
                    "F(g.f) differs from F(g).F(f)",
                )
            )
            count += 1
            if count >= max_pairs:
                break
    return report


def check_equivalence(functor, inverse_functor, eta, phi, source_arrows, target_arrows):
    """Two-sided natural isomorphisms for a functor pair.

    eta compares the source identity functor with inverse_functor . functor;
    phi compares the target identity functor with functor . inverse_functor.
    Components must be invertible and the squares must commute exactly.
    """
    report = []
    cases = (
        (eta, functor.source, source_arrows, lambda a: inverse_functor.apply(functor.apply(a))),
        (phi, functor.target, target_arrows, lambda a: functor.apply(inverse_functor.apply(a))),
    )
    for trans, cat, arrows, round_trip in cases:
        for obj in _sample_objects(arrows):
            comp = trans.component_record(obj)
            inv = trans.inverse_record(obj)
            back = cat.compose(inv, comp)
            forth = cat.compose(comp, inv)
            ok = (
                back.payload == cat.identity_arrow(comp.dom).payload
                and forth.payload == cat.identity_arrow(comp.cod).payload
            )
            report.append(
                _entry(
                    "%s-invertibility" % trans.name,
                    repr(obj),
                    ok,
                    "component is not a two-sided isomorphism",
                )
            )
        for a in arrows:
            image = round_trip(a)
            lhs = cat.compose(trans.component_record(a.cod), a)
            rhs = cat.compose(image, trans.component_record(a.dom))
            report.append(
                _entry(
                    "%s-naturality" % trans.name,
                    a.arrow_id,
                    lhs.payload == rhs.payload,
                    "naturality square does not commute",
                )
            )
    return report
