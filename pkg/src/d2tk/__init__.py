"""2-distance coloring toolkit for plane graphs."""
