"""
activecc Test Suite
Unit, statistical and CLI tests for activecc components.
"""
