"""Module energy"""
