# Numerical Radius Bound Toolkit
