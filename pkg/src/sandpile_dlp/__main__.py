import sys

from sandpile_dlp.cli import main

sys.exit(main())
