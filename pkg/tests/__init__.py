"""
Test Suite for Loan Approval System
Comprehensive testing for all agents, API endpoints, and business logic
"""
