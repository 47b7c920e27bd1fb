"""Coxeter gluings: basic constructions, Davis complexes, complexes of
groups, curvature certificates, and twist groups."""

from .cog import (ComplexOfGroups, FiniteGroup, FormalPresentation,
                  FreeAbelian, Hom, Scwol, first_spanning_tree, from_gluing,
                  pi1_presentation, spanning_trees, validate)
from .construction import (Cell, ChamberGraph, GluedComplex, build_u,
                           chamber_graph, davis_complex, euler_characteristic,
                           export_poset, quotient_complex,
                           verify_sigma_properties)
from .coxeter import INFINITY, BallResult, CoxeterMatrix, CoxeterSystem
from .curvature import (CurvatureReport, GalleryDevelopment, LocalDevelopment,
                        MetricNerve, SphericalTriangle,
                        check_nonpositive_curvature, coxeter_link_provider,
                        develop_gallery, is_flag, is_metric_flag,
                        local_development, moussong_nerve, right_angled_nerve,
                        scwol_star, sphere_distance)
from .errors import (CapExceeded, CoxglueError, DanglingReference,
                     EdgeTooShort, GeneratorIndexError, InsufficientRadius,
                     InvalidBlock, InvalidTriangle, NotAnAction, NotCentral,
                     NotEnumerable, NotNice, NotSpanningTree, NotWFinite,
                     SchemaError, Truncated, UnknownStratum)
from .mirrored import (MirroredComplex, StratifiedComplex, Stratum, is_nice,
                       is_w_finite, nerve_of_mirrored_space)
from .presentations import (AbelianInvariants, Presentation, abelianization,
                            exponent_matrix, free_reduce, invert,
                            smith_normal_form, tietze_simplify,
                            word_from_string, word_to_string)
from .project import ProjectSpec, load
from .simplicial import SimplicialComplex, find_isomorphism
from .twists import (BANNER, Block, TwistAutomorphism, TwistGenerator,
                     TwistReport, all_blocks, blocks, twist_automorphism,
                     twist_group_report)

__version__ = "0.1.0"
