class SynthesisFailure(RuntimeError):
    """An approximation search gave up (candidate cap or factoring budget)."""


class VerificationError(AssertionError):
    """A synthesized circuit failed its independent error re-check."""
