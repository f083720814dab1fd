"""Module channel"""
