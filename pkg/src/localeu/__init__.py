"""Local Euler obstructions, constructible functions and Behrend bookkeeping."""
