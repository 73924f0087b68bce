"""Exception hierarchy shared across the toolkit.

Every error carries a short machine-parseable ``code`` so the CLI can emit
``code: message`` on a single stderr line.
"""


class SatQKDError(Exception):
    """Base class for all toolkit errors."""

    code = "error"


class EmptyInputError(SatQKDError):
    """An operation received an empty collection it cannot work on."""

    code = "empty_input"


class MalformedMatrixError(SatQKDError):
    """Distance matrix is not square, not symmetric, or has a nonzero diagonal."""

    code = "malformed_matrix"


class DegenerateCentroidError(SatQKDError):
    """Member positions cancel out (e.g. antipodal pair); no meaningful centroid."""

    code = "degenerate_centroid"


class KeplerSolverError(SatQKDError):
    """Eccentric-anomaly iteration failed to converge."""

    code = "solver_failure"


class GeometryDomainError(SatQKDError):
    """Geometric argument outside its valid domain (e.g. elevation not in [0, 90])."""

    code = "domain"


class DegenerateGeometryError(SatQKDError):
    """Coincident positions make the requested angle undefined."""

    code = "degenerate_geometry"


class InfeasibleRingError(SatQKDError):
    """No altitude gives the requested ring adjacent-pair line of sight."""

    code = "infeasible_ring"


class LinkFitError(SatQKDError):
    """Calibration points cannot define a log-linear link model."""

    code = "fit_error"


class ConfigError(SatQKDError):
    """Scenario configuration is malformed or references missing files."""

    code = "config_error"


class StationFileError(SatQKDError):
    """Station CSV could not be parsed; message includes the offending line number."""

    code = "station_file_error"
