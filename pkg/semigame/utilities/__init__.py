# Semigame - Utilities Package
# This package contains utility functions used across the toolkit

from .rational_utils import (
    to_fraction,
    parse_rational,
    format_rational
)

from .seed_utils import (
    derive_seed,
    make_rng,
    rep_rng
)

from .stats_utils import (
    SampleSummary,
    summarize
)

from .io_utils import (
    size_label,
    ensure_directory,
    dump_json,
    write_json,
    write_table,
    list_cache_files,
    clear_cache
)

__all__ = [
    # Rational utilities
    'to_fraction',
    'parse_rational',
    'format_rational',

    # Seed utilities
    'derive_seed',
    'make_rng',
    'rep_rng',

    # Statistics utilities
    'SampleSummary',
    'summarize',

    # I/O utilities
    'size_label',
    'ensure_directory',
    'dump_json',
    'write_json',
    'write_table',
    'list_cache_files',
    'clear_cache'
]
