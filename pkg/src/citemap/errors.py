"""Exception types shared across the pipeline."""


class CitemapError(Exception):
    """Base class for all citemap errors."""


class NotADoi(CitemapError):
    """Text could not be normalized into a canonical DOI."""


class EmptyFile(CitemapError):
    """Input table has no header row."""


class MissingHeader(CitemapError):
    """A required or mapped column is absent from the input table."""


class MalformedRow(CitemapError):
    """A table row holds a value that cannot be parsed into its field type."""


class ConflictingRecord(CitemapError):
    """Two resolved records for the same DOI disagree on content."""


class NoResolvableSeeds(CitemapError):
    """No seed row carried a DOI that could be attempted."""

    def __init__(self, message: str, log=None):
        super().__init__(message)
        self.log = log


class EmptyFrontier(CitemapError):
    """A frontier step was requested but nothing is queued."""


class DanglingReference(CitemapError):
    """A reference DOI has no corpus record; the closure invariant is broken."""


class EmptyGraph(CitemapError):
    """The operation needs at least one vertex."""


class IncompleteMembership(CitemapError):
    """A community membership does not cover every graph vertex."""


class UnknownCommunityId(CitemapError):
    """A label refers to a community id that is not in the assignment."""
