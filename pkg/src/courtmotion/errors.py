"""Exception hierarchy and process exit codes.

Every error raised by this package derives from CourtMotionError and carries
the exit code the CLI maps it to: 2 for input/schema problems, 3 for
configuration problems, 4 for internal invariant violations.
"""

from __future__ import annotations

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CONFIG = 3
EXIT_INTERNAL = 4


class CourtMotionError(Exception):
    """Base class for all package errors."""

    exit_code = EXIT_INTERNAL


class InputError(CourtMotionError):
    """Malformed or inconsistent input data."""

    exit_code = EXIT_INPUT


class SchemaError(InputError):
    """A required column or field is missing or mistyped."""


class DuplicateKeyError(InputError):
    """(player_index, time_rank) pairs must be unique within a dataset."""


class OrderingError(InputError):
    """Timestamps within a player are not monotonically increasing."""


class EmptyDatasetError(InputError):
    """An operation that needs data was given none."""


class RangeError(InputError):
    """A coordinate is outside its documented range."""


class InsufficientPlayersError(InputError):
    """Fewer points than the metric needs (pairwise distance wants >= 2)."""


class DegenerateSitesError(InputError):
    """Voronoi sites coincide within the dedup tolerance."""

    def __init__(self, offenders: list[tuple[int, int]]):
        self.offenders = offenders
        pairs = ", ".join(f"({i},{j})" for i, j in offenders)
        super().__init__(f"coincident sites within tolerance: {pairs}")


class DegenerateBandwidthError(InputError):
    """No usable KDE bandwidth (zero spread on an axis); pass one explicitly."""


class DegenerateFieldError(InputError):
    """A constant density field has no contour levels."""


class EmptyGridError(InputError):
    """An occupancy grid with zero total has no relative frequencies."""


class UnsupportedRosterError(InputError):
    """Quintet segmentation supports exactly a 6-player roster."""


class AlignmentError(InputError):
    """Tracking and play-by-play clocks share no overlapping minutes."""


class ConfigurationError(CourtMotionError):
    """Invalid or incomplete configuration."""

    exit_code = EXIT_CONFIG
