"""
Test suite for the Hecke engine
"""
