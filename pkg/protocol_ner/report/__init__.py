"""
protocol_ner.report - Text renderings of scores, confusions, statistics and pipeline runs.
"""

from .tables import render_confusions, render_pipeline, render_scores, render_stats

__all__ = ["render_confusions", "render_pipeline", "render_scores", "render_stats"]
