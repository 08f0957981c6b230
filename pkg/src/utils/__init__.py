"""
Shared helpers: errors, logging and option validation.
"""
