"""Exact combinatorial calculus on pointed Bratteli diagrams.

The package models a truncated Bratteli diagram as a leveled directed
multigraph with per-vertex matrix sizes, normalizes its slack by level
insertion or source augmentation, points it, counts and enumerates the
paths from the pointed vertices, builds the matrix-unit tower of cylinder
generators the paths index, and verifies the resulting diagonal and MASA
structure.  Every computation uses exact integer or Gaussian-rational
arithmetic; nothing is checked up to a tolerance.
"""

__version__ = "0.1.0"

from .algebra import (AlgebraElement, Generator, MatrixRealization,
                      MatrixUnitSystem, check_matrix_units, embed,
                      find_intertwiner, level_algebra,
                      multiplicity_of_embedding, verify_tower)
from .bd1 import parse, serialize
from .diagonal import (FreeNormalizerCertificate, check_diagonal_recursion,
                       diagonal_basis, expectation,
                       free_normalizer_certificates, masa_basis,
                       relative_commutant, verify_diagonal_level,
                       verify_expectation, verify_masa)
from .diagram import (BratteliDiagram, PointSet, ValidationIssue,
                      ValidationResult, extend, slack, telescope, validate)
from .errors import (BratteliError, Bd1SemanticError, Bd1SyntaxError,
                     CapExceeded, IntertwinerError, InvalidDiagram,
                     MultiplicityMismatch, NoExcessSlack, NoNextLevel,
                     NotHomomorphism, NotNormalized, NoTail,
                     TailSlackUnsupported)
from .normalize import (compute_point_set, insert_slack_level, normalize,
                        normalize_with_positions, prepend_unit_level)
from .paths import (DEFAULT_CAP, EdgeId, Path, count_paths, enumerate_paths,
                    verify_path_counts)
from .render import to_dot
from .report import build_report, render_json
from .scalars import GaussianRational
from .verification import VerificationItem
