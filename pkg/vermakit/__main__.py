from vermakit.cli import main

main()
