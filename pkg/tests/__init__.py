"""
Test suite for the conic toolkit
"""
