"""Test suite for the hierarchical navigation sandbox"""
