"""Exact-arithmetic analysis of point sets spanning few ordinary planes."""

from .cyclotomic import Scalar, cos2pi, euler_phi, set_order_cap, sin2pi
from .census import (CensusReport, ValidationReport, ordinary_lines_2d,
                     plane_census, predicted_extremal_count, validate)
from .dual import (DoubleDiamond, DualEdge, DualVertex, Gamma, build_gamma,
                   classify_edges, extract_double_diamond, find_segments,
                   verify_identities)
from .generators import (ANTI_PRISM, PRISM, ExtremalSpec, PointSet,
                         apply_projectivity, boroczky_planar, make_anti_prism,
                         make_extremal, make_prism, prism_apex_point,
                         random_projectivity, random_set)
from .lifting import (CircleKey, PlanarPointSet, lift, ordinary_circles_direct,
                      ordinary_circles_via_lift, ordinary_lines_planar,
                      quartic_from_pencil)
from .projective import (ProjLine, ProjPlane, ProjPoint, det4, plane_through,
                         project_from)
from .quadrics import (HPoly, InterpolationSpace, Pencil, QForm, chasles_nine,
                       eight_associated_points, interpolation_space, line_ell_p,
                       pencil_degenerate_members, phi_p, phi_pq, polarize,
                       radical_analysis, tangent_plane, verify_cone)
from .recovery import (ExtremalVerdict, PencilCover, RecoveredPencil,
                       classify_extremal, recover_pencil, weak_structure_cover)

__version__ = "0.1.0"
