"""Module reporting"""
