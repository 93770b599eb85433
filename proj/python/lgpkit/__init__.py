"""Python bindings for the logic-indicator corpus toolkit."""

import json as _json

from . import _core
from ._core import (
    Category,
    ConfigError,
    EmitError,
    FilterPolicy,
    IndicatorMatch,
    IngestError,
    IntegrityError,
    Lexicon,
    LexiconEntry,
    LgpError,
    MaskedSample,
    MaskPolicy,
    Matcher,
    NumericError,
    Paragraph,
    ParseError,
    ValidationError,
    ablate_text,
    filter_paragraphs,
    idol_loss,
    lcp_loss,
    mask_paragraph,
    softmax_cross_entropy,
    split_paragraphs,
    tokenize,
)


def find_indicators(text, matcher=None):
    """Matches of the lexicon in a single paragraph of text."""
    return (matcher or Matcher()).find(Paragraph(text))


def report(path, bucket_width=1.0):
    """Corpus report over a record file, as a dict."""
    return _json.loads(_core.report_json(str(path), bucket_width))


def run_build(inputs, output, seed, **kwargs):
    """Builds a masked dataset and returns the build summary as a dict."""
    if isinstance(inputs, (str, bytes)) or hasattr(inputs, "__fspath__"):
        inputs = [inputs]
    summary = _core.run_build_json([str(p) for p in inputs], str(output), seed, **kwargs)
    return _json.loads(summary)

