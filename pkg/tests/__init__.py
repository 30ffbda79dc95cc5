"""
Test suite for multi-label learning with negative sampling.

Run tests with: pytest
Enron acceptance tests run only when enron.txt is found under XMLC_DATA_DIR.
"""
