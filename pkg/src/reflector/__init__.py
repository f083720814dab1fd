"""Module reflector"""
