"""Publication-driven catalog engine for mathematical software.

The pipeline: ingest publication records, mine titles for software-name
candidates, curate them into a catalog, index every title/abstract
mention, derive per-software profiles (keyword cloud, classification
distribution, citation timeline, similar software, quality flag), verify
homepages, and serve the result over a read-only HTTP API.
"""

__version__ = "0.1.0"
