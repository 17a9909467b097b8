"""
activecc - Active Correlation Clustering
Pivot-based correlation clustering with a budget on pairwise similarity queries.
"""

__version__ = "1.0.0"
__author__ = "activecc Team"
__description__ = "Query-efficient correlation clustering and its experiment harness"


def main():
    """Entry point for CLI"""
    from .cli import cli

    cli()
