"""Module world"""
