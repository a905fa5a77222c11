"""Scikit-learn style front end for the extraction pipeline.

CurveSegmentExtractor is a stateless transformer: fit() only validates
the hyperparameters, transform() runs the pipeline.  It composes with
sklearn tooling (get_params/set_params, clone, pipelines) so the
extractor can sit inside larger feature-extraction graphs.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .pipeline import PipelineConfig, SegmentSet, run

__all__ = ["CurveSegmentExtractor"]


class CurveSegmentExtractor(BaseEstimator, TransformerMixin):
    """Extract parametric convex/concave curve segments from images.

    Parameters mirror PipelineConfig: LoG scale `sigma`, relative
    response threshold `threshold`, minimum region area `min_area`,
    Fourier harmonic count `harmonics` ("auto" or int), response
    `polarity` ("positive"/"negative") and curvature sample count
    `samples`.
    """

    def __init__(
        self,
        sigma=2.0,
        threshold=0.5,
        min_area=10,
        harmonics="auto",
        polarity="positive",
        samples=256,
    ):
        self.sigma = sigma
        self.threshold = threshold
        self.min_area = min_area
        self.harmonics = harmonics
        self.polarity = polarity
        self.samples = samples

    def _config(self) -> PipelineConfig:
        return PipelineConfig(
            sigma=self.sigma,
            tau_frac=self.threshold,
            min_area=self.min_area,
            harmonics=self.harmonics,
            polarity=self.polarity,
            samples=self.samples,
        )

    def fit(self, X=None, y=None):
        """Validate hyperparameters; the transformer learns nothing."""
        self.config_ = self._config()
        return self

    def extract(self, image, path=None) -> SegmentSet:
        """Run the pipeline on a single 2-D image."""
        return run(image, self._config(), path=path)

    def transform(self, X):
        """Extract segments from one image or a sequence of images.

        A single 2-D array yields one SegmentSet; a sequence (or 3-D
        stack) yields a list of SegmentSet, one per image.
        """
        if isinstance(X, np.ndarray) and X.ndim == 2:
            return self.extract(X)
        return [self.extract(img) for img in X]
