from domination.cli import main

# =================================================================
# ENTRY POINT
# =================================================================
# Usage: python app.py solve graph.txt --out graph.sol
#        python app.py harness --trials 50 --workers 4
if __name__ == "__main__":
    raise SystemExit(main())
