"""Exception hierarchy.

Every error carries a machine-readable ``code``; ``input_error`` marks the
ones the CLI reports with exit status 2 (bad input) rather than 1.
"""


class MwlatError(Exception):
    code = "error"
    input_error = False

    def __init__(self, message="", **details):
        super().__init__(message)
        self.details = details

    def to_json(self):
        out = {"code": self.code, "message": str(self)}
        if self.details:
            out["details"] = {k: str(v) for k, v in self.details.items()}
        return out


class SpecError(MwlatError):
    code = "spec_error"
    input_error = True


# numfield
class PinMismatch(MwlatError):
    code = "pin_mismatch"
    input_error = True


class MalformedRadicand(MwlatError):
    code = "malformed_radicand"
    input_error = True


class TowerMismatch(MwlatError):
    code = "tower_mismatch"


class DivisionByZero(MwlatError, ZeroDivisionError):
    code = "division_by_zero"


class InvalidTower(MwlatError):
    code = "invalid_tower"
    input_error = True


# funcfield
class NotInTower(MwlatError):
    code = "not_in_tower"


# weierstrass / fibers
class SingularModel(MwlatError):
    code = "singular_model"
    input_error = True


class DegreeBound(MwlatError):
    code = "degree_bound"
    input_error = True


class NonMinimalModel(MwlatError):
    code = "non_minimal_model"
    input_error = True


class UnsupportedFiber(MwlatError):
    code = "unsupported_fiber"


class BadIndex(MwlatError):
    code = "bad_index"


# mwlattice
class OddPoleOrder(MwlatError):
    code = "odd_pole_order"


class NotInSpan(MwlatError):
    code = "not_in_span"


# planegeom
class NotQuarticNormalForm(MwlatError):
    code = "not_quartic_normal_form"
    input_error = True


class NonIntegralSection(MwlatError):
    code = "non_integral_section"


class DegenerateConic(MwlatError):
    code = "degenerate_conic"


class OddMultiplicity(MwlatError):
    code = "odd_multiplicity"


class SingularContact(MwlatError):
    code = "singular_contact"


class ChartFailure(MwlatError):
    code = "chart_failure"


class ComponentLine(MwlatError):
    code = "component_line"


class NotIrreducible(MwlatError):
    code = "not_irreducible"
