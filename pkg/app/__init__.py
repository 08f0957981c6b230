"""
Command-line application package.
"""
