"""Exact computations for nodal curves on smooth surfaces in P^3."""

__version__ = "0.1.0"

from .errors import (DegenerateGeometry, FieldMismatch, HypothesisViolation, InconclusiveSearch,
                     InvalidInput, NodalError, SurfaceSingular)
from .fieldcore import ExactMatrix, FieldCtx, FieldElem, embed, extend, field_make, mat_rank, parse_field_spec
from .instability import InstabilityReport, instability_analyze
from .intersection import (BoundReport, SurfaceCtx, gln_bound, h0_of_multiple, obstruction_locus_dims,
                           pa_of_multiple, severi_bound)
from .nodalcurve import (CurveRecord, gln_check, make_curve_record, node_classify, plane_severi_check,
                         severi_report, singular_points, surface_with_split_line_section)
from .polyring import HomPoly, hessian, poly_eval, poly_format, poly_parse, poly_partials, random_poly, sylvester_resultant
from .zerodim import PointSet, conditions_imposed, koszul_ci_h0, random_grid_ci, socle_check
from .constructor import ExampleRecord, build_even_example, build_odd_example, verify_example
