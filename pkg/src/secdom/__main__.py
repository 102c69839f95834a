from secdom.cli import main

main()
