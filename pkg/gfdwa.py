#!/usr/bin/env python3
"""gfdwa - Development wrapper for easy source usage"""

import sys
from pathlib import Path

def main():
    """Wrapper that calls the package main function directly for development."""
    package_path = Path(__file__).parent / "gfdwa"
    if package_path.exists():
        sys.path.insert(0, str(package_path.parent))

        try:
            from gfdwa.main import main as package_main
            return package_main()
        except ImportError as e:
            print(f"Error importing gfdwa package: {e}")
            print("Please install the dependencies with: pip install -e .")
            return 1
    else:
        print("Error: gfdwa package directory not found.")
        print("Please ensure you're running from the repository root.")
        return 1

if __name__ == "__main__":
    sys.exit(main())
