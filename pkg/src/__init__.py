# Tonnetz Lab - Source Module
