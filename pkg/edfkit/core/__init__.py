# Core building blocks
