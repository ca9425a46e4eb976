# Test Scripts Package
