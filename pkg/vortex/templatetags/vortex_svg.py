from django import template

register = template.Library()


@register.filter
def svg_num(value, places=3):
    """Fixed-point coordinate, '-0.000' folded to '0.000'."""
    text = f"{float(value):.{int(places)}f}"
    return text[1:] if text.startswith("-") and float(text) == 0 else text


@register.filter
def svg_points(points):
    return " ".join(f"{svg_num(x)},{svg_num(y)}" for x, y in points)
