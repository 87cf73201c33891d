"""
pgx - prime graph explorer for finite groups
"""
__version__ = "1.0.0"
