from edfkit.main import main

main()
